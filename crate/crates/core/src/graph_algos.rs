//! Graph machinery behind the graph-based constructions and bounds: strong
//! edge colorings, induced matchings, biclique covers, strong biclique
//! coverings and onto-edges homomorphisms.
//!
//! Every search below is exact up to a size threshold and falls back to a
//! deterministic greedy rule above it; results carry an `exact` flag.
//! Greedy orders are lexicographic on edge endpoints.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::access::{Edge, Graph, Subset};
use crate::error::{Result, VcsError};

/// Largest edge count for which the strong chromatic index is computed exactly.
pub const EXACT_COLORING_EDGES: usize = 12;
/// Largest edge count for which a maximum induced matching is computed exactly.
pub const EXACT_MATCHING_EDGES: usize = 16;
/// Largest edge count for exact biclique covers and strong biclique coverings.
pub const EXACT_COVER_EDGES: usize = 10;
/// Vertex cap for the homomorphism search.
pub const MAX_HOMOMORPHISM_VERTICES: usize = 12;

fn require_edges(g: &Graph) -> Result<()> {
    if g.edge_count() == 0 {
        Err(VcsError::EdgelessGraph)
    } else {
        Ok(())
    }
}

/// True when `e` and `f` cannot share a color class of a strong coloring:
/// they meet, or some edge joins their endpoints.
pub fn edges_conflict(g: &Graph, e: Edge, f: Edge) -> bool {
    if e == f {
        return false;
    }
    let (a, b) = (e.as_subset(), f.as_subset());
    !a.is_disjoint(b) || g.has_edge_between(a, b)
}

/// `conflicts[i]` has bit `j` set when edges `i` and `j` conflict.
fn conflict_masks(g: &Graph) -> Vec<u64> {
    let edges = g.edges();
    edges
        .iter()
        .map(|&e| {
            edges
                .iter()
                .enumerate()
                .filter(|&(_, &f)| edges_conflict(g, e, f))
                .fold(0u64, |m, (j, _)| m | 1 << j)
        })
        .collect()
}

/// True when the edges are pairwise non-conflicting edges of `g`.
pub fn is_induced_matching(g: &Graph, edges: &[Edge]) -> bool {
    edges.iter().all(|e| g.has_edge(e.0, e.1))
        && edges
            .iter()
            .enumerate()
            .all(|(i, &e)| edges[i + 1..].iter().all(|&f| e != f && !edges_conflict(g, e, f)))
}

/// An edge coloring in which every color class is an induced matching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongColoring {
    pub classes: Vec<Vec<Edge>>,
    /// True when the class count is the strong chromatic index.
    pub exact: bool,
}

impl StrongColoring {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Independent validator: the classes partition `E(g)` and each is an
/// induced matching.
pub fn is_strong_coloring(g: &Graph, classes: &[Vec<Edge>]) -> bool {
    let mut all: Vec<Edge> = classes.iter().flatten().copied().collect();
    all.sort();
    all == g.edges() && classes.iter().all(|c| !c.is_empty() && is_induced_matching(g, c))
}

fn classes_from_colors(g: &Graph, colors: &[usize], k: usize) -> Vec<Vec<Edge>> {
    let mut classes = vec![Vec::new(); k];
    for (i, &c) in colors.iter().enumerate() {
        classes[c].push(g.edges()[i]);
    }
    classes
}

fn greedy_strong_coloring(conflicts: &[u64]) -> (Vec<usize>, usize) {
    let mut colors: Vec<usize> = Vec::with_capacity(conflicts.len());
    let mut used = 0;
    for (i, &mask) in conflicts.iter().enumerate() {
        let c = (0..)
            .find(|&c| (0..i).all(|j| colors[j] != c || mask & (1 << j) == 0))
            .unwrap();
        colors.push(c);
        used = used.max(c + 1);
    }
    (colors, used)
}

fn color_with(conflicts: &[u64], k: usize, colors: &mut Vec<usize>, used: usize) -> bool {
    let i = colors.len();
    if i == conflicts.len() {
        return true;
    }
    for c in 0..k.min(used + 1) {
        if (0..i).any(|j| colors[j] == c && conflicts[i] & (1 << j) != 0) {
            continue;
        }
        colors.push(c);
        if color_with(conflicts, k, colors, used.max(c + 1)) {
            return true;
        }
        colors.pop();
    }
    false
}

pub fn strong_edge_coloring(g: &Graph) -> Result<StrongColoring> {
    require_edges(g)?;
    if g.edge_count() > EXACT_COLORING_EDGES {
        return greedy_strong_edge_coloring(g);
    }
    let conflicts = conflict_masks(g);
    let (greedy, greedy_used) = greedy_strong_coloring(&conflicts);
    for k in 1..greedy_used {
        let mut colors = Vec::new();
        if color_with(&conflicts, k, &mut colors, 0) {
            return Ok(StrongColoring {
                classes: classes_from_colors(g, &colors, k),
                exact: true,
            });
        }
    }
    Ok(StrongColoring {
        classes: classes_from_colors(g, &greedy, greedy_used),
        exact: true,
    })
}

/// Edges in order, each taking the smallest color it does not conflict with.
pub fn greedy_strong_edge_coloring(g: &Graph) -> Result<StrongColoring> {
    require_edges(g)?;
    let edges = g.edges();
    let mut colors: Vec<usize> = Vec::with_capacity(edges.len());
    let mut used = 0;
    for (i, &e) in edges.iter().enumerate() {
        let c = (0..)
            .find(|&c| (0..i).all(|j| colors[j] != c || !edges_conflict(g, e, edges[j])))
            .unwrap();
        colors.push(c);
        used = used.max(c + 1);
    }
    Ok(StrongColoring {
        classes: classes_from_colors(g, &colors, used),
        exact: false,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedMatching {
    pub edges: Vec<Edge>,
    /// True when `edges` is a maximum induced matching.
    pub exact: bool,
}

fn max_independent(conflicts: &[u64], i: usize, chosen: u64, size: usize, best: &mut (u64, usize)) {
    if i == conflicts.len() {
        if size > best.1 {
            *best = (chosen, size);
        }
        return;
    }
    if size + (conflicts.len() - i) <= best.1 {
        return;
    }
    if conflicts[i] & chosen == 0 {
        max_independent(conflicts, i + 1, chosen | 1 << i, size + 1, best);
    }
    max_independent(conflicts, i + 1, chosen, size, best);
}

/// Edges in order, each kept when it conflicts with none kept so far.
pub fn greedy_induced_matching(g: &Graph) -> Result<InducedMatching> {
    require_edges(g)?;
    let mut chosen: Vec<Edge> = Vec::new();
    for &e in g.edges() {
        if chosen.iter().all(|&f| !edges_conflict(g, e, f)) {
            chosen.push(e);
        }
    }
    Ok(InducedMatching {
        edges: chosen,
        exact: false,
    })
}

pub fn max_induced_matching(g: &Graph) -> Result<InducedMatching> {
    require_edges(g)?;
    let edges = g.edges();
    if edges.len() > EXACT_MATCHING_EDGES {
        return greedy_induced_matching(g);
    }
    let conflicts = conflict_masks(g);
    let mut best = (0u64, 0usize);
    max_independent(&conflicts, 0, 0, 0, &mut best);
    let chosen = (0..edges.len())
        .filter(|&i| best.0 & (1 << i) != 0)
        .map(|i| edges[i])
        .collect();
    Ok(InducedMatching {
        edges: chosen,
        exact: true,
    })
}

/// A complete bipartite subgraph with parts `left` and `right`.
///
/// The left part is the one holding the smallest vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Biclique {
    left: Subset,
    right: Subset,
}

impl Biclique {
    pub fn new(a: Subset, b: Subset) -> Result<Self> {
        if a.is_empty() || b.is_empty() {
            return Err(VcsError::InvalidBiclique("both parts must be non-empty".into()));
        }
        if !a.is_disjoint(b) {
            return Err(VcsError::InvalidBiclique(format!("parts {a} and {b} overlap")));
        }
        let (left, right) = if a.min() < b.min() { (a, b) } else { (b, a) };
        Ok(Biclique { left, right })
    }

    pub fn from_edge(e: Edge) -> Self {
        Biclique {
            left: Subset::singleton(e.0),
            right: Subset::singleton(e.1),
        }
    }

    pub fn left(&self) -> Subset {
        self.left
    }

    pub fn right(&self) -> Subset {
        self.right
    }

    pub fn vertices(&self) -> Subset {
        self.left.union(self.right)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.left
            .iter()
            .flat_map(move |u| self.right.iter().map(move |v| Edge::new(u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.left.len() * self.right.len()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        (self.left.contains(e.0) && self.right.contains(e.1))
            || (self.left.contains(e.1) && self.right.contains(e.0))
    }

    /// Every `left x right` pair is an edge of `g`.
    pub fn check_in(&self, g: &Graph) -> Result<()> {
        if let Some(p) = self.vertices().max().filter(|&p| p > g.vertex_count()) {
            return Err(VcsError::InvalidBiclique(format!(
                "vertex {p} outside 1..={}",
                g.vertex_count()
            )));
        }
        match self.edges().find(|e| !g.has_edge(e.0, e.1)) {
            Some(e) => Err(VcsError::InvalidBiclique(format!(
                "{self} needs edge {e}, absent from the graph"
            ))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Biclique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.left, self.right)
    }
}

impl fmt::Debug for Biclique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct BicliqueFile {
    left: Subset,
    right: Subset,
}

impl Serialize for Biclique {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        BicliqueFile {
            left: self.left,
            right: self.right,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Biclique {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = BicliqueFile::deserialize(deserializer)?;
        Biclique::new(raw.left, raw.right).map_err(serde::de::Error::custom)
    }
}

/// The biclique formed by an edge subset, if it is complete bipartite.
fn biclique_of_edges(edges: &[Edge], mask: u64) -> Option<Biclique> {
    let picked: Vec<Edge> = (0..edges.len())
        .filter(|&i| mask & (1 << i) != 0)
        .map(|i| edges[i])
        .collect();
    let vertices = picked
        .iter()
        .fold(Subset::EMPTY, |s, e| s.union(e.as_subset()));
    // Two-color the picked subgraph component by component.
    let mut side_a = Subset::EMPTY;
    let mut side_b = Subset::EMPTY;
    for start in vertices.iter() {
        if side_a.union(side_b).contains(start) {
            continue;
        }
        side_a.insert(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let u_in_a = side_a.contains(u);
            for e in picked.iter().filter(|e| e.touches(u)) {
                let v = if e.0 == u { e.1 } else { e.0 };
                let v_in_a = side_a.contains(v);
                let v_in_b = side_b.contains(v);
                if !v_in_a && !v_in_b {
                    if u_in_a {
                        side_b.insert(v);
                    } else {
                        side_a.insert(v);
                    }
                    stack.push(v);
                } else if v_in_a == u_in_a {
                    return None;
                }
            }
        }
    }
    // Bipartite with |E| = |A||B| forces completeness (and connectivity).
    if picked.len() == side_a.len() * side_b.len() {
        Biclique::new(side_a, side_b).ok()
    } else {
        None
    }
}

/// All bicliques of a small graph, each with its edge mask over `g.edges()`.
fn all_bicliques(g: &Graph) -> Vec<(Biclique, u64)> {
    let edges = g.edges();
    debug_assert!(edges.len() <= EXACT_COVER_EDGES);
    (1u64..1 << edges.len())
        .filter_map(|mask| biclique_of_edges(edges, mask).map(|b| (b, mask)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BicliqueCover {
    pub bicliques: Vec<Biclique>,
    /// True when the size is the biclique covering number.
    pub exact: bool,
}

fn cover_search(cands: &[(Biclique, u64)], full: u64, covered: u64, budget: usize, chosen: &mut Vec<usize>) -> bool {
    if covered == full {
        return true;
    }
    if budget == 0 {
        return false;
    }
    let first = (!covered & full).trailing_zeros();
    for (i, (_, mask)) in cands.iter().enumerate() {
        if mask & (1 << first) == 0 {
            continue;
        }
        chosen.push(i);
        if cover_search(cands, full, covered | mask, budget - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Stars at a greedy vertex cover: repeatedly the vertex touching the most
/// uncovered edges, smallest index on ties.
pub fn star_biclique_cover(g: &Graph) -> Result<BicliqueCover> {
    require_edges(g)?;
    let mut uncovered: Vec<Edge> = g.edges().to_vec();
    let mut stars = Vec::new();
    while !uncovered.is_empty() {
        let v = (1..=g.vertex_count())
            .max_by_key(|&v| {
                (
                    uncovered.iter().filter(|e| e.touches(v)).count(),
                    std::cmp::Reverse(v),
                )
            })
            .unwrap();
        stars.push(Biclique::new(Subset::singleton(v), g.neighbors(v)).expect("star"));
        uncovered.retain(|e| !e.touches(v));
    }
    Ok(BicliqueCover {
        bicliques: stars,
        exact: false,
    })
}

pub fn biclique_cover(g: &Graph) -> Result<BicliqueCover> {
    require_edges(g)?;
    if g.edge_count() > EXACT_COVER_EDGES {
        return star_biclique_cover(g);
    }
    let all = all_bicliques(g);
    let maximal: Vec<(Biclique, u64)> = all
        .iter()
        .filter(|(_, m)| !all.iter().any(|(_, o)| o != m && o & m == *m))
        .copied()
        .collect();
    let full = (1u64 << g.edge_count()) - 1;
    for budget in 1..=g.edge_count() {
        let mut chosen = Vec::new();
        if cover_search(&maximal, full, 0, budget, &mut chosen) {
            let mut bicliques: Vec<Biclique> = chosen.iter().map(|&i| maximal[i].0).collect();
            bicliques.sort();
            return Ok(BicliqueCover {
                bicliques,
                exact: true,
            });
        }
    }
    unreachable!("single edges always cover")
}

/// Layers of bicliques: within a layer the bicliques are vertex-disjoint
/// and no edge of the graph joins two of them; all layers together cover
/// every edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongBicliqueCovering {
    pub layers: Vec<Vec<Biclique>>,
    /// True when the layer count is the strong biclique covering number.
    #[serde(default)]
    pub exact: bool,
}

impl StrongBicliqueCovering {
    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// One layer per color class, each edge its own biclique.
    pub fn from_coloring(coloring: &StrongColoring) -> Self {
        StrongBicliqueCovering {
            layers: coloring
                .classes
                .iter()
                .map(|c| c.iter().map(|&e| Biclique::from_edge(e)).collect())
                .collect(),
            exact: false,
        }
    }

    /// One layer per biclique.
    pub fn from_cover(cover: &BicliqueCover) -> Self {
        StrongBicliqueCovering {
            layers: cover.bicliques.iter().map(|&b| vec![b]).collect(),
            exact: false,
        }
    }
}

fn layer_compatible(g: &Graph, a: &Biclique, b: &Biclique) -> bool {
    a.vertices().is_disjoint(b.vertices()) && !g.has_edge_between(a.vertices(), b.vertices())
}

/// Checks the strong biclique covering conditions against `g`.
pub fn validate_layering(g: &Graph, layers: &[Vec<Biclique>]) -> Result<()> {
    for (li, layer) in layers.iter().enumerate() {
        if layer.is_empty() {
            return Err(VcsError::InvalidLayering(format!("layer {} is empty", li + 1)));
        }
        for (i, b) in layer.iter().enumerate() {
            b.check_in(g)?;
            for c in &layer[i + 1..] {
                if !layer_compatible(g, b, c) {
                    return Err(VcsError::InvalidLayering(format!(
                        "layer {}: {b} and {c} share a vertex or are joined by an edge",
                        li + 1
                    )));
                }
            }
        }
    }
    if let Some(e) = g
        .edges()
        .iter()
        .find(|&&e| !layers.iter().flatten().any(|b| b.contains_edge(e)))
    {
        return Err(VcsError::InvalidLayering(format!("edge {e} is not covered")));
    }
    Ok(())
}

struct LayerSearch<'a> {
    g: &'a Graph,
    cands: Vec<(Biclique, u64)>,
    full: u64,
    layers: Vec<Vec<usize>>,
}

impl LayerSearch<'_> {
    fn run(&mut self, covered: u64, max_layers: usize) -> bool {
        if covered == self.full {
            return true;
        }
        let first = (!covered & self.full).trailing_zeros();
        for ci in 0..self.cands.len() {
            let (b, mask) = self.cands[ci];
            if mask & (1 << first) == 0 {
                continue;
            }
            let open = self.layers.len();
            for li in 0..=open.min(max_layers - 1) {
                if li == open {
                    self.layers.push(vec![ci]);
                } else if self.layers[li]
                    .iter()
                    .all(|&o| layer_compatible(self.g, &self.cands[o].0, &b))
                {
                    self.layers[li].push(ci);
                } else {
                    continue;
                }
                if self.run(covered | mask, max_layers) {
                    return true;
                }
                if li == open {
                    self.layers.pop();
                } else {
                    self.layers[li].pop();
                }
            }
        }
        false
    }
}

pub fn strong_biclique_covering(g: &Graph) -> Result<StrongBicliqueCovering> {
    require_edges(g)?;
    let coloring = strong_edge_coloring(g)?;
    let cover = biclique_cover(g)?;
    let fallback = if coloring.len() <= cover.bicliques.len() {
        StrongBicliqueCovering::from_coloring(&coloring)
    } else {
        StrongBicliqueCovering::from_cover(&cover)
    };
    if g.edge_count() > EXACT_COVER_EDGES {
        return Ok(fallback);
    }
    // Smaller bicliques first, so ties resolve to the simplest layers.
    let mut cands = all_bicliques(g);
    cands.sort_by_key(|(b, _)| (b.edge_count(), *b));
    let mut search = LayerSearch {
        g,
        cands,
        full: (1u64 << g.edge_count()) - 1,
        layers: Vec::new(),
    };
    for t in 1..fallback.len() {
        search.layers.clear();
        if search.run(0, t) {
            let layers = search
                .layers
                .iter()
                .map(|l| {
                    let mut v: Vec<Biclique> = l.iter().map(|&i| search.cands[i].0).collect();
                    v.sort();
                    v
                })
                .collect();
            return Ok(StrongBicliqueCovering {
                layers,
                exact: true,
            });
        }
    }
    Ok(StrongBicliqueCovering {
        exact: true,
        ..fallback
    })
}

/// Connected components of `g` as bicliques, when each component with an
/// edge is complete bipartite.
pub fn biclique_components(g: &Graph) -> Result<Vec<Biclique>> {
    require_edges(g)?;
    let mut seen = Subset::EMPTY;
    let mut out = Vec::new();
    for v in 1..=g.vertex_count() {
        if seen.contains(v) || g.is_isolated(v) {
            continue;
        }
        let mut comp = Subset::singleton(v);
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for w in g.neighbors(u).difference(comp).iter() {
                comp.insert(w);
                stack.push(w);
            }
        }
        seen = seen.union(comp);
        // Bipartition by parity of distance from v: neighbors of v versus the rest.
        let right = g.neighbors(v);
        let left = comp.difference(right);
        let b = Biclique::new(left, right)?;
        let edges_inside = g
            .edges()
            .iter()
            .filter(|e| comp.contains(e.0))
            .count();
        if b.check_in(g).is_err() || edges_inside != b.edge_count() {
            return Err(VcsError::InvalidBiclique(format!(
                "component {comp} is not complete bipartite"
            )));
        }
        out.push(b);
    }
    Ok(out)
}

/// Checks that `sigma` (with `sigma[v - 1]` the image of vertex `v`) maps
/// every edge of `g` to an edge of `h` and hits every edge of `h`.
pub fn check_onto_edge_homomorphism(g: &Graph, h: &Graph, sigma: &[usize]) -> Result<()> {
    if sigma.len() != g.vertex_count() {
        return Err(VcsError::NotHomomorphism(format!(
            "map has {} entries for {} vertices",
            sigma.len(),
            g.vertex_count()
        )));
    }
    if let Some(&bad) = sigma.iter().find(|&&x| x == 0 || x > h.vertex_count()) {
        return Err(VcsError::NotHomomorphism(format!(
            "image {bad} outside 1..={}",
            h.vertex_count()
        )));
    }
    let mut hit = vec![false; h.edge_count()];
    for e in g.edges() {
        let (a, b) = (sigma[e.0 - 1], sigma[e.1 - 1]);
        if !h.has_edge(a, b) {
            return Err(VcsError::NotHomomorphism(format!(
                "edge {e} maps to non-edge {{{a},{b}}}"
            )));
        }
        let idx = h.edges().binary_search(&Edge::new(a, b)).expect("edge present");
        hit[idx] = true;
    }
    if let Some(i) = hit.iter().position(|&x| !x) {
        return Err(VcsError::NotOntoEdges(format!(
            "target edge {} has no preimage",
            h.edges()[i]
        )));
    }
    Ok(())
}

struct HomSearch<'a> {
    g: &'a Graph,
    h: &'a Graph,
    sigma: Vec<usize>,
    hit: Vec<usize>,
}

impl HomSearch<'_> {
    fn uncovered(&self) -> usize {
        self.hit.iter().filter(|&&c| c == 0).count()
    }

    fn run(&mut self, v: usize) -> bool {
        let n = self.g.vertex_count();
        if v > n {
            return self.uncovered() == 0;
        }
        // Edges of g with an endpoint at v or later can still hit new target edges.
        let remaining = self.g.edges().iter().filter(|e| e.1 >= v).count();
        if remaining < self.uncovered() {
            return false;
        }
        let earlier = self.g.neighbors(v).intersection(Subset::full(v - 1));
        for x in 1..=self.h.vertex_count() {
            if !earlier.iter().all(|u| self.h.has_edge(self.sigma[u - 1], x)) {
                continue;
            }
            let touched: Vec<usize> = earlier
                .iter()
                .map(|u| {
                    self.h
                        .edges()
                        .binary_search(&Edge::new(self.sigma[u - 1], x))
                        .unwrap()
                })
                .collect();
            self.sigma.push(x);
            for &t in &touched {
                self.hit[t] += 1;
            }
            if self.run(v + 1) {
                return true;
            }
            for &t in &touched {
                self.hit[t] -= 1;
            }
            self.sigma.pop();
        }
        false
    }
}

/// Backtracking search for an onto-edges homomorphism `g -> h`.
pub fn find_onto_edge_homomorphism(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>> {
    require_edges(g)?;
    require_edges(h)?;
    for count in [g.vertex_count(), h.vertex_count()] {
        if count > MAX_HOMOMORPHISM_VERTICES {
            return Err(VcsError::CapExceeded {
                what: "vertex count for homomorphism search",
                value: count,
                cap: MAX_HOMOMORPHISM_VERTICES,
            });
        }
    }
    let mut search = HomSearch {
        g,
        h,
        sigma: Vec::with_capacity(g.vertex_count()),
        hit: vec![0; h.edge_count()],
    };
    Ok(search.run(1).then_some(search.sigma))
}
