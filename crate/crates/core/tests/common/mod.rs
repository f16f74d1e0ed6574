#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use vcs_core::bounds::{
    check_disjoint_blocks, check_induced_matching, check_isolating_family, check_peeling_family,
    check_separating_family, minimal_count_bound,
};
use vcs_core::graph_algos::max_induced_matching;
use vcs_core::{AccessStructure, BasisModel, BitMatrix, BoundCertificate, Edge, Graph, SetKind, Subset};

/// All graphs on `n` vertices with at least one edge, one per isomorphism
/// class, each given by the representative with the smallest edge mask.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    let perms = permutations(n);
    let index = |u: usize, v: usize| {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        pairs.iter().position(|&p| p == (a, b)).unwrap()
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 1u32..1 << pairs.len() {
        let canon = perms
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .fold(0u32, |acc, (_, &(u, v))| acc | 1 << index(p[u - 1], p[v - 1]))
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| canon >> i & 1 == 1)
                .map(|(_, &e)| e);
            out.push(Graph::new(n, edges).unwrap());
        }
    }
    out
}

/// All permutations of `1..=n` as vectors of images.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (1..=n).collect(), &mut Vec::new(), &mut out);
    out
}

/// Column-permutation equality by trying every permutation.
pub fn brute_permutation_equal(a: &BitMatrix, b: &BitMatrix) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return false;
    }
    let m = a.cols();
    permutations(m).iter().any(|p| {
        (0..a.rows()).all(|r| (0..m).all(|j| a.get(r, j) == b.get(r, p[j] - 1)))
    })
}

/// Every family of distinct members drawn from `pool`, including the empty
/// family.
pub fn all_families(pool: &[Subset]) -> Vec<Vec<Subset>> {
    (0u64..1 << pool.len())
        .map(|mask| {
            pool.iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &s)| s)
                .collect()
        })
        .collect()
}

/// Every non-empty family of pairwise disjoint members of `pool`.
pub fn disjoint_families(pool: &[Subset]) -> Vec<Vec<Subset>> {
    fn go(pool: &[Subset], start: usize, used: Subset, cur: &mut Vec<Subset>, out: &mut Vec<Vec<Subset>>) {
        for i in start..pool.len() {
            if pool[i].is_disjoint(used) {
                cur.push(pool[i]);
                out.push(cur.clone());
                go(pool, i + 1, used.union(pool[i]), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(pool, 0, Subset::EMPTY, &mut Vec::new(), &mut out);
    out
}

pub fn rows_to_matrix(rows: &[Vec<bool>]) -> BitMatrix {
    let bytes: Vec<Vec<u8>> = rows
        .iter()
        .map(|r| r.iter().map(|&b| u8::from(b)).collect())
        .collect();
    BitMatrix::from_rows(&bytes).unwrap()
}

/// A random access structure on `1..=max_n` participants.
pub fn access_structure(max_n: usize) -> impl Strategy<Value = AccessStructure> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(1u64..1 << n, 1..=4)
            .prop_map(move |sets| AccessStructure::new(n, sets.into_iter().map(Subset::from_bits)).unwrap())
    })
}

/// A random `rows × cols` matrix given as rows of bits.
pub fn bit_rows(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<bool>>> {
    prop::collection::vec(prop::collection::vec(any::<bool>(), cols), rows)
}

/// A random matrix with 1..=max_rows rows and 1..=max_cols columns.
pub fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| bit_rows(r, c).prop_map(|rows| rows_to_matrix(&rows)))
}

/// A random graph on 2..=max_n vertices with at least one edge.
pub fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        prop::collection::vec(any::<bool>(), len)
            .prop_filter("needs an edge", |pick| pick.iter().any(|&b| b))
            .prop_map(move |pick| {
                let edges = pairs.iter().zip(&pick).filter(|(_, &b)| b).map(|(&e, _)| e);
                Graph::new(n, edges).unwrap()
            })
    })
}

/// Every accepted certificate of every kind for one structure, as
/// (model, bound, certificate JSON).
pub fn accepted_bounds(gamma: &AccessStructure) -> Vec<(BasisModel, usize, String)> {
    let mut out = Vec::new();
    let mut record = |cert: BoundCertificate| {
        for tag in &cert.applies_to {
            out.push((tag.model(), cert.bound, serde_json::to_string(&cert).unwrap()));
        }
    };
    let forbidden: Vec<Subset> = gamma
        .enumerate_sets(SetKind::Forbidden)
        .unwrap()
        .into_iter()
        .filter(|f| !f.is_empty())
        .collect();
    for family in all_families(&forbidden).into_iter().skip(1) {
        for check in [check_separating_family, check_isolating_family, check_peeling_family] {
            if let Ok(cert) = check(gamma, &family) {
                record(cert);
            }
        }
    }
    let qualified = gamma.enumerate_sets(SetKind::Qualified).unwrap();
    for blocks in disjoint_families(&qualified) {
        if let Ok(cert) = check_disjoint_blocks(gamma, &blocks) {
            record(cert);
        }
    }
    record(minimal_count_bound(gamma));
    if let Some(g) = gamma.to_graph() {
        let matching = max_induced_matching(&g).unwrap().edges;
        for sub in all_families(&matching.iter().map(|e| e.as_subset()).collect::<Vec<_>>()) {
            let edges: Vec<Edge> = matching
                .iter()
                .copied()
                .filter(|e| sub.contains(&e.as_subset()))
                .collect();
            if let Ok(cert) = check_induced_matching(gamma, &edges) {
                record(cert);
            }
        }
    }
    out
}
