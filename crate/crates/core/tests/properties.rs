mod common;

use proptest::prelude::*;
use proptest::test_runner::Config;
use vcs_core::bounds::{best_lower_bound, check_disjoint_blocks, check_isolating_family, omega_from_blocks, revalidate};
use vcs_core::construct::{biclique_cover_vcs2, compose_strong_layers, k_out_of_k, transport_hom};
use vcs_core::graph_algos::{
    biclique_cover, check_onto_edge_homomorphism, find_onto_edge_homomorphism, greedy_induced_matching,
    greedy_strong_edge_coloring, is_induced_matching, is_strong_coloring, max_induced_matching, star_biclique_cover,
    strong_biclique_covering, strong_edge_coloring, validate_layering,
};
use vcs_core::imaging::encrypt_image;
use vcs_core::search::{feasible_at_with, optimal_pixel_expansion_with};
use vcs_core::verify::basis_holds_at;
use vcs_core::*;

fn config(cases: u32) -> Config {
    Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    }
}

fn small_search() -> SearchConfig {
    SearchConfig {
        limits: SearchLimits { max_n: 4, max_m: 6 },
        sequential: true,
        ..SearchConfig::default()
    }
}

fn any_model() -> impl Strategy<Value = BasisModel> {
    prop_oneof![Just(BasisModel::Vcs2), Just(BasisModel::Vcs3), Just(BasisModel::Vcs5)]
}

/// A structure together with the optimal witness for a model, when one
/// exists within four columns.
fn witness(gamma: &AccessStructure, model: BasisModel) -> Option<BasisScheme> {
    match optimal_pixel_expansion_with(gamma, model, 4, &small_search()).unwrap() {
        SearchOutcome::Found { witness, .. } => Some(witness),
        SearchOutcome::Exhausted { .. } => None,
    }
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn classes_partition_and_qualified_is_upward_closed(gamma in common::access_structure(6)) {
        for x in gamma.universe().subsets() {
            let classes = [
                gamma.is_minimal_qualified(x),
                gamma.is_qualified(x) && !gamma.is_minimal_qualified(x),
                gamma.is_forbidden(x),
            ];
            prop_assert_eq!(classes.iter().filter(|&&c| c).count(), 1);
            if gamma.is_qualified(x) {
                for p in 1..=gamma.n() {
                    prop_assert!(gamma.is_qualified(x.union(Subset::singleton(p))));
                }
            }
        }
    }

    #[test]
    fn rebuilding_from_minimal_sets_is_identity(gamma in common::access_structure(6)) {
        let again = AccessStructure::new(gamma.n(), gamma.minimal_qualified().iter().copied()).unwrap();
        prop_assert_eq!(again, gamma);
    }

    #[test]
    fn restriction_preserves_permutation_equality(
        (rows, perm, x) in (1usize..=4, 1usize..=5).prop_flat_map(|(n, m)| (
            common::bit_rows(n, m),
            Just((0..m).collect::<Vec<_>>()).prop_shuffle(),
            1u64..1 << n,
        ))
    ) {
        let a = common::rows_to_matrix(&rows);
        let b = a.permute_columns(&perm);
        prop_assert!(a.permutation_equal(&b));
        let x = Subset::from_bits(x);
        prop_assert!(a.restrict(x).unwrap().permutation_equal(&b.restrict(x).unwrap()));
        prop_assert_eq!(a.restrict(x).unwrap().canonical(), b.restrict(x).unwrap().canonical());
    }

    #[test]
    fn basis_and_permutation_collections_agree(
        gamma in common::access_structure(3),
        model in any_model(),
        (r0, r1) in (1usize..=4).prop_flat_map(|m| (common::bit_rows(3, m), common::bit_rows(3, m))),
    ) {
        let n = gamma.n();
        let s = BasisScheme::new(
            model,
            common::rows_to_matrix(&r0[..n]),
            common::rows_to_matrix(&r1[..n]),
        ).unwrap();
        let basis = verify_basis(&gamma, &s).unwrap();
        let collections = s.to_collections().unwrap();
        let as_collections = match model {
            BasisModel::Vcs2 => collections,
            _ => collections.with_model(CollectionModel::Vcs4),
        };
        let coll = verify_collections(&gamma, &as_collections).unwrap();
        // Model 3 adds a condition on larger qualified sets that model 4 lacks.
        if model != BasisModel::Vcs3 {
            prop_assert_eq!(basis.valid, coll.valid);
        }
        if basis.valid {
            prop_assert!(coll.valid);
            prop_assert_eq!(basis.alpha, coll.alpha);
        }
    }

    #[test]
    fn model3_schemes_are_model5_schemes(
        gamma in common::access_structure(3),
        (r0, r1) in (1usize..=4).prop_flat_map(|m| (common::bit_rows(3, m), common::bit_rows(3, m))),
    ) {
        let n = gamma.n();
        let s = BasisScheme::new(
            BasisModel::Vcs3,
            common::rows_to_matrix(&r0[..n]),
            common::rows_to_matrix(&r1[..n]),
        ).unwrap();
        if verify_basis(&gamma, &s).unwrap().valid {
            prop_assert!(verify_basis(&gamma, &s.with_model(BasisModel::Vcs5)).unwrap().valid);
        }
    }

    #[test]
    fn graph_algorithms_are_consistent(g in common::graph(6)) {
        let coloring = strong_edge_coloring(&g).unwrap();
        prop_assert!(is_strong_coloring(&g, &coloring.classes));
        let greedy = greedy_strong_edge_coloring(&g).unwrap();
        prop_assert!(is_strong_coloring(&g, &greedy.classes));
        prop_assert!(coloring.len() <= greedy.len());

        let matching = max_induced_matching(&g).unwrap();
        prop_assert!(is_induced_matching(&g, &matching.edges));
        let greedy_matching = greedy_induced_matching(&g).unwrap();
        prop_assert!(is_induced_matching(&g, &greedy_matching.edges));
        prop_assert!(greedy_matching.edges.len() <= matching.edges.len());
        // Every color class is itself an induced matching.
        prop_assert!(g.edge_count() <= coloring.len() * matching.edges.len());

        let cover = biclique_cover(&g).unwrap();
        let stars = star_biclique_cover(&g).unwrap();
        for e in g.edges() {
            prop_assert!(cover.bicliques.iter().any(|b| b.contains_edge(*e)));
            prop_assert!(stars.bicliques.iter().any(|b| b.contains_edge(*e)));
        }
        for b in cover.bicliques.iter().chain(&stars.bicliques) {
            prop_assert!(b.check_in(&g).is_ok());
        }
        prop_assert!(cover.bicliques.len() <= stars.bicliques.len());
    }

    #[test]
    fn strong_covering_is_at_most_cover_and_coloring(g in common::graph(5)) {
        prop_assume!(g.edge_count() <= 10);
        let s = strong_biclique_covering(&g).unwrap();
        prop_assert!(s.exact);
        prop_assert!(validate_layering(&g, &s.layers).is_ok());
        let bc = biclique_cover(&g).unwrap().bicliques.len();
        let sp = strong_edge_coloring(&g).unwrap().len();
        prop_assert!(s.len() <= bc.min(sp));
    }

    #[test]
    fn constructions_verify(g in common::graph(5)) {
        let gamma = AccessStructure::from_graph(&g).unwrap();
        let cover = biclique_cover(&g).unwrap();
        let vcs2 = biclique_cover_vcs2(&g, &cover.bicliques).unwrap();
        prop_assert!(verify_basis(&gamma, &vcs2).unwrap().valid);
        prop_assert_eq!(vcs2.m(), 2 * cover.bicliques.len());

        let layers = strong_biclique_covering(&g).unwrap().layers;
        let vcs4 = compose_strong_layers(&g, &layers).unwrap();
        let report = verify_collections(&gamma, &vcs4).unwrap();
        prop_assert!(report.valid);
        prop_assert_eq!(vcs4.m(), 2 * layers.len());
    }

    #[test]
    fn found_homomorphisms_transport_schemes(g in common::graph(5), h in common::graph(3)) {
        let Some(sigma) = find_onto_edge_homomorphism(&g, &h).unwrap() else {
            return Ok(());
        };
        prop_assert!(check_onto_edge_homomorphism(&g, &h, &sigma).is_ok());
        if (1..=h.vertex_count()).any(|v| h.is_isolated(v)) {
            return Ok(());
        }
        let stars = star_biclique_cover(&g).unwrap();
        let basis = biclique_cover_vcs2(&g, &stars.bicliques).unwrap();
        if basis.m() > 6 {
            return Ok(());
        }
        let source = basis.to_collections().unwrap();
        let moved = transport_hom(&source, &g, &h, &sigma).unwrap();
        let report = verify_collections(&AccessStructure::from_graph(&h).unwrap(), &moved).unwrap();
        prop_assert!(report.valid);
        prop_assert_eq!(moved.m(), source.m());
    }

    #[test]
    fn block_certificates_imply_isolating_families(gamma in common::access_structure(5)) {
        let qualified = gamma.enumerate_sets(SetKind::Qualified).unwrap();
        for blocks in common::disjoint_families(&qualified) {
            let Ok(cert) = check_disjoint_blocks(&gamma, &blocks) else {
                continue;
            };
            let omega = omega_from_blocks(&blocks);
            if omega.is_empty() {
                continue;
            }
            let via_family = check_isolating_family(&gamma, &omega);
            prop_assert!(via_family.is_ok(), "blocks {:?} accepted, family {:?} rejected", blocks, omega);
            prop_assert_eq!(via_family.unwrap().bound, cert.bound);
        }
    }

    #[test]
    fn certificates_survive_json(gamma in common::access_structure(4), model in any_model()) {
        let cert = best_lower_bound(&gamma, model, &BoundBudget::default()).unwrap();
        prop_assert!(cert.applies(model));
        let json = serde_json::to_string(&cert).unwrap();
        let back: BoundCertificate = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &cert);
        let again = revalidate(&gamma, &back).unwrap();
        prop_assert_eq!(again.bound, cert.bound);
    }

    #[test]
    fn encrypted_shares_stack_to_expanded_size(
        w in 1usize..6,
        h in 1usize..6,
        grid in any::<bool>(),
        seed in any::<u64>(),
    ) {
        let gamma = construct::builtin_structure("P4-VCS2").unwrap();
        let scheme = Scheme::Basis(construct::builtin("P4-VCS2").unwrap());
        let image = BinaryImage::from_fn(w, h, |x, y| (x ^ y) & 1 == 1);
        let layout = if grid { Layout::Grid } else { Layout::Strip };
        let shares = encrypt_image(&scheme, &gamma, &image, seed, layout).unwrap();
        let again = encrypt_image(&scheme, &gamma, &image, seed, layout).unwrap();
        prop_assert_eq!(&shares.shares, &again.shares);
        let (sw, sh) = shares.geometry.share_size();
        let (bw, bh) = shares.geometry.block();
        prop_assert!(bw * bh >= scheme.m());
        prop_assert_eq!((sw, sh), (w * bw, h * bh));
        let stacked = shares.stack_set(gamma.universe()).unwrap();
        prop_assert_eq!((stacked.width(), stacked.height()), (sw, sh));
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn search_witnesses_verify_with_exact_contrast(gamma in common::access_structure(3), model in any_model()) {
        let Some(s) = witness(&gamma, model) else {
            return Ok(());
        };
        let report = verify_basis(&gamma, &s).unwrap();
        prop_assert!(report.valid);
        prop_assert!(basis_holds_at(&gamma, &s, report.alpha).unwrap());
        let step = Rational64::new(1, s.m() as i64);
        prop_assert!(!basis_holds_at(&gamma, &s, report.alpha + step).unwrap());
        let smaller = s.m() - 1;
        if smaller > 0 {
            prop_assert!(feasible_at_with(&gamma, model, smaller, &small_search()).unwrap().is_none());
        }
    }

    #[test]
    fn accepted_certificates_never_exceed_the_optimum(gamma in common::access_structure(3)) {
        let bounds = common::accepted_bounds(&gamma);
        for model in [BasisModel::Vcs2, BasisModel::Vcs3, BasisModel::Vcs5] {
            let best = bounds.iter().filter(|b| b.0 == model).map(|b| b.1).max().unwrap_or(1);
            for m in 1..best {
                let found = feasible_at_with(&gamma, model, m, &small_search()).unwrap();
                prop_assert!(found.is_none(), "model {} bound {} beaten at m = {}", model.number(), best, m);
            }
        }
    }

    #[test]
    fn best_bound_never_exceeds_the_optimum(gamma in common::access_structure(4), model in any_model()) {
        let cert = best_lower_bound(&gamma, model, &BoundBudget::default()).unwrap();
        for m in 1..cert.bound {
            let found = feasible_at_with(&gamma, model, m, &small_search()).unwrap();
            prop_assert!(found.is_none(), "{:?} beaten at m = {}", cert, m);
        }
    }
}

#[test]
fn k_out_of_k_verifies_and_matches_block_bound() {
    for k in 1..=8 {
        let gamma = AccessStructure::threshold_all(k).unwrap();
        let s = k_out_of_k(k).unwrap();
        let report = verify_basis(&gamma, &s).unwrap();
        assert!(report.valid, "k = {k}");
        assert_eq!(s.m(), 1 << (k - 1));
        assert_eq!(check_disjoint_blocks(&gamma, &[gamma.universe()]).unwrap().bound, s.m());
    }
}

#[test]
fn graph_census_matches_known_counts() {
    let counts: Vec<usize> = (2..=5).map(|n| common::graphs_up_to_isomorphism(n).len()).collect();
    assert_eq!(counts, vec![1, 3, 10, 33]);
}
