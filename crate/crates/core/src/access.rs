//! Access structures and graphs.
//!
//! Participants are the integers `1..=n` with `n <= 64`; a [`Subset`] is a
//! bitmask over them. An [`AccessStructure`] keeps only its minimal qualified
//! sets. Qualified and forbidden sets are derived by monotone closure.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, VcsError};

/// Largest participant / vertex count representable by a [`Subset`].
pub const MAX_PARTICIPANTS: usize = 64;

/// Default cap on `n` for operations that enumerate all `2^n` subsets.
pub const DEFAULT_ENUMERATION_CAP: usize = 16;

/// A set of participants, bit `i - 1` standing for participant `i`.
///
/// Ordered by size, then lexicographically on the sorted member list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(p: usize) -> Self {
        debug_assert!((1..=MAX_PARTICIPANTS).contains(&p));
        Subset(1 << (p - 1))
    }

    /// All of `1..=n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_PARTICIPANTS);
        if n == MAX_PARTICIPANTS {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn from_participants<I: IntoIterator<Item = usize>>(participants: I) -> Result<Self> {
        let mut bits = 0u64;
        for p in participants {
            if p == 0 || p > MAX_PARTICIPANTS {
                return Err(VcsError::ParticipantOutOfRange {
                    participant: p,
                    n: MAX_PARTICIPANTS,
                });
            }
            bits |= 1 << (p - 1);
        }
        Ok(Subset(bits))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, p: usize) -> bool {
        (1..=MAX_PARTICIPANTS).contains(&p) && self.0 & (1 << (p - 1)) != 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn insert(&mut self, p: usize) {
        self.0 |= 1 << (p - 1);
    }

    /// Largest participant in the set, if any.
    pub fn max(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(64 - self.0.leading_zeros() as usize)
        }
    }

    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i + 1)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset of `self`, the empty set included, in no particular order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(full);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 { None } else { Some((cur - 1) & full) };
            Some(Subset(cur))
        })
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(deserializer)?;
        Subset::from_participants(members).map_err(serde::de::Error::custom)
    }
}

/// Where a set of participants falls in an access structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetClass {
    MinimalQualified,
    QualifiedNonMinimal,
    Forbidden,
}

/// Selector for [`AccessStructure::enumerate_sets`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetKind {
    MinimalQualified,
    QualifiedNonMinimal,
    /// Minimal and non-minimal qualified sets together.
    Qualified,
    Forbidden,
}

impl SetKind {
    fn admits(self, class: SetClass) -> bool {
        match self {
            SetKind::MinimalQualified => class == SetClass::MinimalQualified,
            SetKind::QualifiedNonMinimal => class == SetClass::QualifiedNonMinimal,
            SetKind::Qualified => class != SetClass::Forbidden,
            SetKind::Forbidden => class == SetClass::Forbidden,
        }
    }
}

/// A monotone access structure over participants `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AccessStructure {
    n: usize,
    minimal: Vec<Subset>,
}

impl AccessStructure {
    /// Builds the structure generated by `q0`, dropping duplicates and
    /// members that contain another member.
    pub fn new<I: IntoIterator<Item = Subset>>(n: usize, q0: I) -> Result<Self> {
        if n > MAX_PARTICIPANTS {
            return Err(VcsError::CapExceeded {
                what: "participant count",
                value: n,
                cap: MAX_PARTICIPANTS,
            });
        }
        let universe = Subset::full(n);
        let mut sets: Vec<Subset> = Vec::new();
        for s in q0 {
            if s.is_empty() {
                return Err(VcsError::EmptySubset);
            }
            if !s.is_subset_of(universe) {
                let participant = s.difference(universe).min().unwrap_or(0);
                return Err(VcsError::ParticipantOutOfRange { participant, n });
            }
            sets.push(s);
        }
        if sets.is_empty() {
            return Err(VcsError::EmptyFamily);
        }
        Ok(AccessStructure {
            n,
            minimal: antichain_reduce(sets),
        })
    }

    /// Convenience constructor from 1-based participant lists.
    pub fn from_lists(n: usize, q0: &[&[usize]]) -> Result<Self> {
        let sets = q0
            .iter()
            .map(|s| Subset::from_participants(s.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, sets)
    }

    /// The graph access structure: minimal qualified sets are the edges.
    pub fn from_graph(g: &Graph) -> Result<Self> {
        if g.edge_count() == 0 {
            return Err(VcsError::EdgelessGraph);
        }
        Self::new(g.vertex_count(), g.edges().iter().map(|e| e.as_subset()))
    }

    /// The `k`-out-of-`k` structure: only the full set is qualified.
    pub fn threshold_all(k: usize) -> Result<Self> {
        Self::new(k, [Subset::full(k)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn universe(&self) -> Subset {
        Subset::full(self.n)
    }

    /// Minimal qualified sets, sorted.
    pub fn minimal_qualified(&self) -> &[Subset] {
        &self.minimal
    }

    pub fn is_qualified(&self, x: Subset) -> bool {
        self.minimal.iter().any(|q| q.is_subset_of(x))
    }

    pub fn is_forbidden(&self, x: Subset) -> bool {
        !self.is_qualified(x)
    }

    pub fn is_minimal_qualified(&self, x: Subset) -> bool {
        self.minimal.binary_search(&x).is_ok()
    }

    pub fn check_in_range(&self, x: Subset) -> Result<()> {
        if x.is_subset_of(self.universe()) {
            Ok(())
        } else {
            Err(VcsError::ParticipantOutOfRange {
                participant: x.difference(self.universe()).min().unwrap_or(0),
                n: self.n,
            })
        }
    }

    pub fn classify(&self, x: Subset) -> Result<SetClass> {
        self.check_in_range(x)?;
        Ok(self.class_of(x))
    }

    pub(crate) fn class_of(&self, x: Subset) -> SetClass {
        if self.is_minimal_qualified(x) {
            SetClass::MinimalQualified
        } else if self.is_qualified(x) {
            SetClass::QualifiedNonMinimal
        } else {
            SetClass::Forbidden
        }
    }

    /// True when every minimal qualified set has exactly two members.
    pub fn is_graph_based(&self) -> bool {
        self.minimal.iter().all(|q| q.len() == 2)
    }

    /// The graph whose edges are the minimal qualified sets, if graph based.
    pub fn to_graph(&self) -> Option<Graph> {
        if !self.is_graph_based() {
            return None;
        }
        let edges = self.minimal.iter().map(|q| {
            let v = q.to_vec();
            (v[0], v[1])
        });
        Graph::new(self.n, edges).ok()
    }

    pub fn enumerate_sets(&self, kind: SetKind) -> Result<Vec<Subset>> {
        self.enumerate_sets_capped(kind, DEFAULT_ENUMERATION_CAP)
    }

    /// All subsets of the requested kind, sorted by size then lexicographically.
    pub fn enumerate_sets_capped(&self, kind: SetKind, cap: usize) -> Result<Vec<Subset>> {
        if self.n > cap {
            return Err(VcsError::CapExceeded {
                what: "participant count for enumeration",
                value: self.n,
                cap,
            });
        }
        if kind == SetKind::MinimalQualified {
            return Ok(self.minimal.clone());
        }
        let mut out: Vec<Subset> = self
            .universe()
            .subsets()
            .filter(|&x| kind.admits(self.class_of(x)))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Forbidden sets not contained in any other forbidden set.
    pub fn maximal_forbidden(&self) -> Result<Vec<Subset>> {
        let forbidden = self.enumerate_sets(SetKind::Forbidden)?;
        let mut maximal: Vec<Subset> = forbidden
            .iter()
            .copied()
            .filter(|&f| {
                !self
                    .universe()
                    .difference(f)
                    .iter()
                    .any(|p| self.is_forbidden(f.union(Subset::singleton(p))))
            })
            .collect();
        maximal.sort();
        Ok(maximal)
    }
}

/// Removes duplicates and strict supersets of other members; output sorted.
pub fn antichain_reduce(mut sets: Vec<Subset>) -> Vec<Subset> {
    sets.sort();
    sets.dedup();
    // Sorted by size, so any subset of a set precedes it.
    let mut kept: Vec<Subset> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|k| k.is_subset_of(s)) {
            kept.push(s);
        }
    }
    kept
}

#[derive(Serialize, Deserialize)]
struct AccessStructureFile {
    n: usize,
    minimal_qualified: Vec<Subset>,
}

impl Serialize for AccessStructure {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        AccessStructureFile {
            n: self.n,
            minimal_qualified: self.minimal.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AccessStructure {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = AccessStructureFile::deserialize(deserializer)?;
        AccessStructure::new(raw.n, raw.minimal_qualified).map_err(serde::de::Error::custom)
    }
}

/// An undirected edge `{u, v}` stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn as_subset(self) -> Subset {
        Subset::singleton(self.0).union(Subset::singleton(self.1))
    }

    pub fn touches(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.0, self.1)
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.0, self.1].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [u, v] = <[usize; 2]>::deserialize(deserializer)?;
        Ok(Edge::new(u, v))
    }
}

/// A finite simple graph on vertices `1..=vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Subset>,
}

impl Graph {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(vertex_count: usize, edges: I) -> Result<Self> {
        if vertex_count > MAX_PARTICIPANTS {
            return Err(VcsError::CapExceeded {
                what: "vertex count",
                value: vertex_count,
                cap: MAX_PARTICIPANTS,
            });
        }
        let mut list = Vec::new();
        let mut adjacency = vec![Subset::EMPTY; vertex_count + 1];
        for (u, v) in edges {
            if u == v {
                return Err(VcsError::InvalidGraph(format!("loop at vertex {u}")));
            }
            for w in [u, v] {
                if w == 0 || w > vertex_count {
                    return Err(VcsError::InvalidGraph(format!(
                        "vertex {w} outside 1..={vertex_count}"
                    )));
                }
            }
            let e = Edge::new(u, v);
            if adjacency[u].contains(v) {
                return Err(VcsError::InvalidGraph(format!("repeated edge {e}")));
            }
            adjacency[u].insert(v);
            adjacency[v].insert(u);
            list.push(e);
        }
        list.sort();
        Ok(Graph {
            vertex_count,
            edges: list,
            adjacency,
        })
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i, i + 1))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Graph::new(n, (1..=n).map(|i| (i, i % n + 1))).expect("valid cycle")
    }

    /// `k` disjoint edges `{2i-1, 2i}`.
    pub fn matching(k: usize) -> Self {
        Graph::new(2 * k, (1..=k).map(|i| (2 * i - 1, 2 * i))).expect("valid matching")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("valid complete graph")
    }

    /// `K_{a,b}` with parts `1..=a` and `a+1..=a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (1..=a).flat_map(|u| (a + 1..=a + b).map(move |v| (u, v)));
        Graph::new(a + b, edges).expect("valid biclique")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn vertices(&self) -> Subset {
        Subset::full(self.vertex_count)
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> Subset {
        self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (1..=self.vertex_count).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.vertex_count && self.adjacency[u].contains(v)
    }

    /// True when some edge joins a vertex of `a` to a vertex of `b`.
    pub fn has_edge_between(&self, a: Subset, b: Subset) -> bool {
        a.iter().any(|u| !self.adjacency[u].is_disjoint(b))
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.adjacency[v].is_empty()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphFile {
            vertices: self.vertex_count,
            edges: self.edges.iter().map(|e| [e.0, e.1]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = GraphFile::deserialize(deserializer)?;
        Graph::new(raw.vertices, raw.edges.into_iter().map(|[u, v]| (u, v)))
            .map_err(serde::de::Error::custom)
    }
}
