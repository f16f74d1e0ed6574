//! Scheme constructions: k-out-of-k, biclique blocks and their layered
//! products, biclique-cover basis matrices, homomorphism transport and two
//! hand-written basis pairs.

use std::collections::BTreeMap;

use crate::access::{AccessStructure, Graph, Subset};
use crate::error::{Result, VcsError};
use crate::graph_algos::{check_onto_edge_homomorphism, validate_layering, Biclique};
use crate::matrix::{BasisModel, BasisScheme, BitMatrix, CollectionModel, CollectionScheme, Column};
use crate::verify::{verify_basis, verify_collections};

/// Largest k accepted by [`k_out_of_k`]; the matrices have `2^(k-1)` columns.
pub const MAX_K_OUT_OF_K: usize = 20;
/// Largest total biclique count across layers; collections hold `2^count` matrices.
pub const MAX_PRODUCT_BICLIQUES: usize = 16;

pub const BUILTIN_NAMES: [&str; 2] = ["P4-VCS2", "M2-VCS3"];

/// Even-size subsets of `{1..k}` as the columns of `S0`, odd-size ones as
/// the columns of `S1`, each in increasing bit order.
pub fn k_out_of_k(k: usize) -> Result<BasisScheme> {
    if k == 0 {
        return Err(VcsError::EmptySubset);
    }
    if k > MAX_K_OUT_OF_K {
        return Err(VcsError::CapExceeded {
            what: "k",
            value: k,
            cap: MAX_K_OUT_OF_K,
        });
    }
    let column = |code: u64| {
        let bits: Vec<bool> = (0..k).map(|r| code >> (k - 1 - r) & 1 == 1).collect();
        Column::from_bits(&bits)
    };
    let (even, odd): (Vec<u64>, Vec<u64>) = (0..1u64 << k).partition(|c| c.count_ones() % 2 == 0);
    BasisScheme::new(
        BasisModel::Vcs2,
        BitMatrix::from_columns(k, even.into_iter().map(column).collect())?,
        BitMatrix::from_columns(k, odd.into_iter().map(column).collect())?,
    )
}

pub fn builtin(name: &str) -> Result<BasisScheme> {
    let (model, s0, s1) = match name {
        "P4-VCS2" => (
            BasisModel::Vcs2,
            ["010", "011", "011", "001"],
            ["010", "101", "011", "100"],
        ),
        "M2-VCS3" => (
            BasisModel::Vcs3,
            ["101", "011", "110", "110"],
            ["101", "101", "110", "011"],
        ),
        other => return Err(VcsError::UnknownBuiltin(other.to_string())),
    };
    BasisScheme::new(
        model,
        BitMatrix::from_row_strings(&s0)?,
        BitMatrix::from_row_strings(&s1)?,
    )
}

/// The access structure a builtin scheme is meant for.
pub fn builtin_structure(name: &str) -> Result<AccessStructure> {
    match name {
        "P4-VCS2" => AccessStructure::from_graph(&Graph::path(4)),
        "M2-VCS3" => AccessStructure::from_graph(&Graph::matching(2)),
        other => Err(VcsError::UnknownBuiltin(other.to_string())),
    }
}

/// Checks that `bicliques` are vertex-disjoint bicliques of `g`, pairwise
/// not joined by edges, and that every edge of `g` lies inside one of them.
fn check_block_family(g: &Graph, bicliques: &[Biclique]) -> Result<()> {
    if bicliques.is_empty() {
        return Err(VcsError::InvalidBiclique("no bicliques given".into()));
    }
    for (i, b) in bicliques.iter().enumerate() {
        b.check_in(g)?;
        for c in &bicliques[i + 1..] {
            if !b.vertices().is_disjoint(c.vertices()) {
                return Err(VcsError::InvalidBiclique(format!("{b} and {c} share a vertex")));
            }
        }
    }
    if let Some(e) = g
        .edges()
        .iter()
        .find(|&&e| !bicliques.iter().any(|b| b.contains_edge(e)))
    {
        return Err(VcsError::InvalidBiclique(format!(
            "edge {e} is not an edge of any biclique"
        )));
    }
    Ok(())
}

type Blocks = Vec<Vec<[bool; 2]>>;

/// Two-column blocks for one layer: entry `d` of each list is the draw
/// whose bit `j` picks the pattern of biclique `j`.
fn layer_blocks(n: usize, bicliques: &[Biclique]) -> (Blocks, Blocks) {
    let draws = 1usize << bicliques.len();
    let mut white = Vec::with_capacity(draws);
    let mut black = Vec::with_capacity(draws);
    for d in 0..draws {
        let mut w = vec![[false; 2]; n];
        let mut b = vec![[false; 2]; n];
        for (j, bq) in bicliques.iter().enumerate() {
            let p = if d >> j & 1 == 0 { [true, false] } else { [false, true] };
            let q = [p[1], p[0]];
            for v in bq.vertices().iter() {
                w[v - 1] = p;
            }
            for v in bq.left().iter() {
                b[v - 1] = p;
            }
            for v in bq.right().iter() {
                b[v - 1] = q;
            }
        }
        white.push(w);
        black.push(b);
    }
    (white, black)
}

/// All combinations of one block per layer, concatenated left to right.
fn product(n: usize, layers: &[Vec<Vec<[bool; 2]>>]) -> Result<BTreeMap<BitMatrix, u64>> {
    let mut out = BTreeMap::new();
    let mut idx = vec![0usize; layers.len()];
    loop {
        let rows: Vec<Vec<u8>> = (0..n)
            .map(|r| {
                idx.iter()
                    .zip(layers)
                    .flat_map(|(&i, layer)| layer[i][r].map(u8::from))
                    .collect()
            })
            .collect();
        *out.entry(BitMatrix::from_rows(&rows)?).or_insert(0) += 1;
        // Odometer over the layer indices, last layer fastest.
        let Some(pos) = (0..layers.len()).rev().find(|&p| idx[p] + 1 < layers[p].len()) else {
            return Ok(out);
        };
        idx[pos] += 1;
        for i in &mut idx[pos + 1..] {
            *i = 0;
        }
    }
}

fn check_product_size(count: usize) -> Result<()> {
    if count > MAX_PRODUCT_BICLIQUES {
        return Err(VcsError::CapExceeded {
            what: "total biclique count",
            value: count,
            cap: MAX_PRODUCT_BICLIQUES,
        });
    }
    Ok(())
}

/// Model-4 collections with two columns for a graph whose edges are covered
/// by vertex-disjoint, mutually non-adjacent bicliques.
pub fn biclique_blocks_vcs4(g: &Graph, bicliques: &[Biclique]) -> Result<CollectionScheme> {
    check_block_family(g, bicliques)?;
    // Any edge leaving a biclique's vertex set would join it to another
    // biclique or to an uncovered vertex.
    let covered = bicliques
        .iter()
        .fold(Subset::EMPTY, |s, b| s.union(b.vertices()));
    for b in bicliques {
        let outside = g.vertices().difference(b.vertices());
        if g.has_edge_between(b.vertices(), outside) {
            return Err(VcsError::InvalidBiclique(format!(
                "{b} is joined by an edge to a vertex outside it"
            )));
        }
    }
    debug_assert!(g.edges().iter().all(|e| covered.contains(e.0)));
    check_product_size(bicliques.len())?;
    let n = g.vertex_count();
    let (white, black) = layer_blocks(n, bicliques);
    CollectionScheme::new(
        CollectionModel::Vcs4,
        product(n, &[white])?,
        product(n, &[black])?,
    )
}

/// Product of one biclique block per layer; `m = 2 * layers`.
pub fn compose_strong_layers(g: &Graph, layers: &[Vec<Biclique>]) -> Result<CollectionScheme> {
    if layers.is_empty() {
        return Err(VcsError::InvalidLayering("no layers given".into()));
    }
    validate_layering(g, layers)?;
    check_product_size(layers.iter().map(Vec::len).sum())?;
    let n = g.vertex_count();
    let (white, black): (Vec<_>, Vec<_>) = layers.iter().map(|l| layer_blocks(n, l)).unzip();
    CollectionScheme::new(CollectionModel::Vcs4, product(n, &white)?, product(n, &black)?)
}

/// Model-2 basis matrices with two columns per biclique of an edge cover.
pub fn biclique_cover_vcs2(g: &Graph, cover: &[Biclique]) -> Result<BasisScheme> {
    if cover.is_empty() {
        return Err(VcsError::InvalidBiclique("cover is empty".into()));
    }
    for b in cover {
        b.check_in(g)?;
    }
    if let Some(e) = g
        .edges()
        .iter()
        .find(|&&e| !cover.iter().any(|b| b.contains_edge(e)))
    {
        return Err(VcsError::InvalidBiclique(format!("edge {e} is not covered")));
    }
    let n = g.vertex_count();
    let mut s0 = BitMatrix::zeros(n, 2 * cover.len())?;
    let mut s1 = s0.clone();
    for (j, b) in cover.iter().enumerate() {
        for v in b.vertices().iter() {
            s0.set(v - 1, 2 * j, true);
        }
        for v in b.left().iter() {
            s1.set(v - 1, 2 * j, true);
        }
        for v in b.right().iter() {
            s1.set(v - 1, 2 * j + 1, true);
        }
    }
    BasisScheme::new(BasisModel::Vcs2, s0, s1)
}

fn check_transport(g: &Graph, h: &Graph, sigma: &[usize]) -> Result<()> {
    check_onto_edge_homomorphism(g, h, sigma)?;
    if let Some(v) = (1..=h.vertex_count()).find(|&v| h.is_isolated(v)) {
        return Err(VcsError::InvalidGraph(format!("target vertex {v} is isolated")));
    }
    Ok(())
}

/// Row `i` of the image is the OR of the rows of `sigma^-1(i)`.
fn fold_rows(m: &BitMatrix, target_n: usize, sigma: &[usize]) -> Result<BitMatrix> {
    let mut out = BitMatrix::zeros(target_n, m.cols())?;
    for (v, &img) in sigma.iter().enumerate() {
        for c in 0..m.cols() {
            if m.get(v, c) {
                out.set(img - 1, c, true);
            }
        }
    }
    Ok(out)
}

fn require_valid(report: crate::verify::VerifyReport, what: &str) -> Result<()> {
    if report.valid {
        Ok(())
    } else {
        Err(VcsError::Unverified(format!(
            "source {what} fails verification ({} violations, alpha {})",
            report.violations.len(),
            crate::verify::rational_string(report.alpha)
        )))
    }
}

/// Moves a model-1 scheme for `g` along an onto-edges homomorphism to `h`.
///
/// The source is verified first, so an invalid input is reported rather
/// than silently transported.
pub fn transport_hom(
    source: &CollectionScheme,
    g: &Graph,
    h: &Graph,
    sigma: &[usize],
) -> Result<CollectionScheme> {
    if source.model != CollectionModel::Vcs1 {
        return Err(VcsError::UnsupportedModel(source.model.number()));
    }
    if source.n() != g.vertex_count() {
        return Err(VcsError::DimensionMismatch(format!(
            "scheme has {} rows, graph has {} vertices",
            source.n(),
            g.vertex_count()
        )));
    }
    check_transport(g, h, sigma)?;
    require_valid(
        verify_collections(&AccessStructure::from_graph(g)?, source)?,
        "collections",
    )?;
    let fold = |c: &BTreeMap<BitMatrix, u64>| -> Result<BTreeMap<BitMatrix, u64>> {
        let mut out = BTreeMap::new();
        for (mat, &f) in c {
            *out.entry(fold_rows(mat, h.vertex_count(), sigma)?).or_insert(0) += f;
        }
        Ok(out)
    };
    CollectionScheme::new(CollectionModel::Vcs1, fold(source.c0())?, fold(source.c1())?)
}

/// Basis-matrix version of [`transport_hom`] for model 2.
pub fn transport_hom_basis(source: &BasisScheme, g: &Graph, h: &Graph, sigma: &[usize]) -> Result<BasisScheme> {
    if source.model != BasisModel::Vcs2 {
        return Err(VcsError::UnsupportedModel(source.model.number()));
    }
    if source.n() != g.vertex_count() {
        return Err(VcsError::DimensionMismatch(format!(
            "scheme has {} rows, graph has {} vertices",
            source.n(),
            g.vertex_count()
        )));
    }
    check_transport(g, h, sigma)?;
    require_valid(verify_basis(&AccessStructure::from_graph(g)?, source)?, "basis")?;
    BasisScheme::new(
        BasisModel::Vcs2,
        fold_rows(&source.s0, h.vertex_count(), sigma)?,
        fold_rows(&source.s1, h.vertex_count(), sigma)?,
    )
}

#[cfg(test)]
mod tests {
    use num_rational::Rational64;

    use super::*;
    use crate::access::Edge;
    use crate::graph_algos::{biclique_cover, strong_edge_coloring, StrongBicliqueCovering};

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn k_out_of_k_small() {
        let s2 = k_out_of_k(2).unwrap();
        assert_eq!(s2.s0, BitMatrix::from_row_strings(&["01", "01"]).unwrap());
        assert_eq!(s2.s1, BitMatrix::from_row_strings(&["01", "10"]).unwrap());
        let s1 = k_out_of_k(1).unwrap();
        assert_eq!(s1.s0, BitMatrix::from_row_strings(&["0"]).unwrap());
        assert_eq!(s1.s1, BitMatrix::from_row_strings(&["1"]).unwrap());
        assert!(k_out_of_k(0).is_err());
    }

    #[test]
    fn k_out_of_k_verifies() {
        for k in 1..=5 {
            let s = k_out_of_k(k).unwrap();
            assert_eq!(s.m(), 1 << (k - 1));
            let rep = verify_basis(&AccessStructure::threshold_all(k).unwrap(), &s).unwrap();
            assert!(rep.valid, "k={k}");
            assert_eq!(rep.alpha, r(1, 1 << (k - 1)));
        }
    }

    #[test]
    fn builtins() {
        let p4 = builtin("P4-VCS2").unwrap();
        assert_eq!(p4.model, BasisModel::Vcs2);
        assert_eq!(p4.s1.to_rows(), vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 1], vec![1, 0, 0]]);
        let m2 = builtin("M2-VCS3").unwrap();
        assert_eq!(m2.model, BasisModel::Vcs3);
        assert_eq!(m2.s0.to_rows()[0], vec![1, 0, 1]);
        assert_eq!(builtin("X"), Err(VcsError::UnknownBuiltin("X".into())));
        for name in BUILTIN_NAMES {
            let rep = verify_basis(&builtin_structure(name).unwrap(), &builtin(name).unwrap()).unwrap();
            assert!(rep.valid, "{name}");
        }
    }

    #[test]
    fn blocks_on_matching() {
        let g = Graph::matching(2);
        let bq = [Biclique::from_edge(Edge(1, 2)), Biclique::from_edge(Edge(3, 4))];
        let c = biclique_blocks_vcs4(&g, &bq).unwrap();
        assert_eq!(c.c0().len(), 4);
        assert_eq!(c.m(), 2);
        let gamma = AccessStructure::from_graph(&g).unwrap();
        let rep = verify_collections(&gamma, &c).unwrap();
        assert!(rep.valid);
        assert_eq!(rep.alpha, r(1, 2));
        assert_eq!(rep.thresholds[&Subset::from_bits(0b11)], 1);
        let edge = Subset::from_bits(0b11);
        assert!(c.c0().keys().all(|m| crate::matrix::weight(&m.or_rows(edge).unwrap()) == 1));
        assert!(c.c1().keys().all(|m| crate::matrix::weight(&m.or_rows(edge).unwrap()) == 2));
    }

    #[test]
    fn blocks_on_single_edge_is_two_of_two() {
        let g = Graph::path(2);
        let c = biclique_blocks_vcs4(&g, &[Biclique::from_edge(Edge(1, 2))]).unwrap();
        let two = k_out_of_k(2).unwrap().to_collections().unwrap();
        assert_eq!(c.c0().keys().collect::<Vec<_>>(), two.c0().keys().collect::<Vec<_>>());
        assert_eq!(c.c1().keys().collect::<Vec<_>>(), two.c1().keys().collect::<Vec<_>>());
    }

    #[test]
    fn blocks_on_star() {
        let g = Graph::complete_bipartite(1, 3);
        let star = Biclique::new(Subset::singleton(1), Subset::from_bits(0b1110)).unwrap();
        let c = biclique_blocks_vcs4(&g, &[star]).unwrap();
        let rep = verify_collections(&AccessStructure::from_graph(&g).unwrap(), &c).unwrap();
        assert!(rep.valid);
        assert_eq!(rep.alpha, r(1, 2));
    }

    #[test]
    fn blocks_reject_bad_families() {
        let p4 = Graph::path(4);
        // {1,2} and {3,4} are joined by edge {2,3}, which is also uncovered.
        let bq = [Biclique::from_edge(Edge(1, 2)), Biclique::from_edge(Edge(3, 4))];
        assert!(biclique_blocks_vcs4(&p4, &bq).is_err());
        let g = Graph::new(3, [(1, 2), (2, 3)]).unwrap();
        // Edge {2,3} leaves the biclique to an uncovered vertex.
        assert!(biclique_blocks_vcs4(&g, &[Biclique::from_edge(Edge(1, 2))]).is_err());
    }

    #[test]
    fn layered_p4_from_coloring() {
        let g = Graph::path(4);
        let coloring = strong_edge_coloring(&g).unwrap();
        let layers = StrongBicliqueCovering::from_coloring(&coloring).layers;
        let c = compose_strong_layers(&g, &layers).unwrap();
        assert_eq!(c.m(), 6);
        let rep = verify_collections(&AccessStructure::from_graph(&g).unwrap(), &c).unwrap();
        assert!(rep.valid, "{rep:?}");
        assert!(rep.alpha >= r(1, 6));
    }

    #[test]
    fn layered_single_layer_matches_blocks() {
        let g = Graph::matching(3);
        let layer: Vec<Biclique> = g.edges().iter().map(|&e| Biclique::from_edge(e)).collect();
        assert_eq!(
            compose_strong_layers(&g, std::slice::from_ref(&layer)).unwrap(),
            biclique_blocks_vcs4(&g, &layer).unwrap()
        );
    }

    #[test]
    fn layered_c6() {
        let g = Graph::cycle(6);
        let e = |u, v| Biclique::from_edge(Edge(u, v));
        let layers = vec![
            vec![e(1, 2), e(4, 5)],
            vec![e(2, 3), e(5, 6)],
            vec![e(3, 4), e(1, 6)],
        ];
        let c = compose_strong_layers(&g, &layers).unwrap();
        assert_eq!(c.m(), 6);
        let rep = verify_collections(&AccessStructure::from_graph(&g).unwrap(), &c).unwrap();
        assert!(rep.valid);
        assert!(rep.alpha >= r(1, 6));
        assert!(compose_strong_layers(&g, &layers[..2]).is_err());
    }

    #[test]
    fn cover_basis_examples() {
        let edge = Graph::path(2);
        let s = biclique_cover_vcs2(&edge, &[Biclique::from_edge(Edge(1, 2))]).unwrap();
        assert!(s.s0.permutation_equal(&k_out_of_k(2).unwrap().s0));
        assert!(s.s1.permutation_equal(&k_out_of_k(2).unwrap().s1));

        let c6 = Graph::cycle(6);
        let stars: Vec<Biclique> = [1, 3, 5]
            .iter()
            .map(|&v| Biclique::new(Subset::singleton(v), c6.neighbors(v)).unwrap())
            .collect();
        let s = biclique_cover_vcs2(&c6, &stars).unwrap();
        assert_eq!(s.m(), 6);
        assert!(verify_basis(&AccessStructure::from_graph(&c6).unwrap(), &s).unwrap().valid);

        let p4 = Graph::path(4);
        let cover = biclique_cover(&p4).unwrap();
        let s = biclique_cover_vcs2(&p4, &cover.bicliques).unwrap();
        assert_eq!(s.m(), 4);
        assert!(verify_basis(&AccessStructure::from_graph(&p4).unwrap(), &s).unwrap().valid);
        assert!(biclique_cover_vcs2(&p4, &cover.bicliques[..1]).is_err());
    }

    #[test]
    fn transport_p4_onto_edge() {
        let p4 = Graph::path(4);
        let k2 = Graph::path(2);
        let source = builtin("P4-VCS2").unwrap().to_collections().unwrap();
        let image = transport_hom(&source, &p4, &k2, &[1, 2, 1, 2]).unwrap();
        assert_eq!(image.m(), 3);
        let rep = verify_collections(&AccessStructure::from_graph(&k2).unwrap(), &image).unwrap();
        assert!(rep.valid);

        let basis = transport_hom_basis(&builtin("P4-VCS2").unwrap(), &p4, &k2, &[1, 2, 1, 2]).unwrap();
        assert!(verify_basis(&AccessStructure::from_graph(&k2).unwrap(), &basis).unwrap().valid);
    }

    #[test]
    fn transport_identity_and_errors() {
        let p4 = Graph::path(4);
        let source = builtin("P4-VCS2").unwrap().to_collections().unwrap();
        assert_eq!(transport_hom(&source, &p4, &p4, &[1, 2, 3, 4]).unwrap(), source);
        let p3 = Graph::path(3);
        let two = k_out_of_k(2).unwrap().to_collections().unwrap();
        assert!(matches!(
            transport_hom(&two, &Graph::path(2), &p3, &[1, 2]),
            Err(VcsError::NotOntoEdges(_))
        ));
        assert!(matches!(
            transport_hom(&source, &p4, &Graph::path(2), &[1, 1, 2, 1]),
            Err(VcsError::NotHomomorphism(_))
        ));
        // A scheme that fails over the source graph is refused.
        let broken = CollectionScheme::new(CollectionModel::Vcs1, source.c0().clone(), source.c0().clone()).unwrap();
        assert!(matches!(
            transport_hom(&broken, &p4, &p4, &[1, 2, 3, 4]),
            Err(VcsError::Unverified(_))
        ));
    }
}
