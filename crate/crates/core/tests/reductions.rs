mod common;

use std::collections::HashSet;

use common::*;
use streq::lcs::multi_lcs;
use streq::reductions::{
    clique_oracle, decode, gen_clique_mixed, gen_clique_single_eq, gen_clique_two_eq,
    gen_clique_two_eq_empty, gen_from_lcs_multi, gen_mcc_size3, mcc_oracle, Graph, ReductionError,
    ReductionOutput,
};
use streq::{classify, solve_deletions_xp, solve_xp, verify, Semantics, SolveOptions};

type Generator = fn(&Graph, usize) -> Result<ReductionOutput, ReductionError>;

/// Solves the reduction and, when satisfiable, checks the decoded vertices
/// form a clique of size `kappa`.
fn solve_and_decode(out: &ReductionOutput, g: &Graph, kappa: usize) -> bool {
    let res = solve_xp(&out.system, &SolveOptions::default()).unwrap();
    if let Some(w) = res.witness() {
        assert!(verify(&out.system, w).holds());
        let picked: Vec<usize> = decode(out, w)
            .expect("witness decodes")
            .into_iter()
            .collect();
        assert_eq!(picked.len(), kappa);
        assert!(g.is_clique(&picked), "decoded {picked:?} is not a clique");
    }
    res.is_sat()
}

fn round_trip_all(generator: Generator, max_n: usize) {
    for n in 1..=max_n {
        for g in all_graphs(n) {
            for kappa in 2..=3 {
                let out = generator(&g, kappa).unwrap();
                assert_eq!(
                    solve_and_decode(&out, &g, kappa),
                    clique_oracle(&g, kappa),
                    "n={n} edges={:?} kappa={kappa}",
                    g.edges()
                );
            }
        }
    }
}

#[test]
fn single_equation_round_trip() {
    round_trip_all(gen_clique_single_eq, 5);
}

#[test]
fn mixed_round_trip() {
    round_trip_all(gen_clique_mixed, 5);
}

#[test]
fn two_equation_round_trip() {
    round_trip_all(gen_clique_two_eq, 4);
}

#[test]
fn multicolored_round_trip() {
    for n in 1..=5 {
        for g in all_graphs(n) {
            for kappa in 2..=3 {
                for colors in proper_colorings(&g, kappa) {
                    let mut g = g.clone();
                    g.set_coloring(colors).unwrap();
                    let out = gen_mcc_size3(&g, kappa).unwrap();
                    assert!(classify(&out.system).c <= 3);
                    let res = solve_xp(&out.system, &SolveOptions::default()).unwrap();
                    assert_eq!(res.is_sat(), mcc_oracle(&g, kappa).unwrap(), "{g:?}");
                    if let Some(w) = res.witness() {
                        let picked: Vec<usize> = decode(&out, w).unwrap().into_iter().collect();
                        assert!(g.is_clique(&picked));
                        let colors = g.coloring().unwrap();
                        let distinct: HashSet<usize> = picked.iter().map(|&v| colors[v]).collect();
                        assert_eq!(distinct.len(), kappa);
                    }
                }
            }
        }
    }
}

/// With empty blocks allowed the two-equation construction keeps every
/// clique, but also admits spurious solutions on clique-free graphs.
#[test]
fn two_equation_empty_variant_keeps_cliques() {
    for n in 2..=4 {
        for g in all_graphs(n) {
            let kappa = 2;
            if !clique_oracle(&g, kappa) {
                continue;
            }
            let out = gen_clique_two_eq_empty(&g, kappa).unwrap();
            assert_eq!(out.system.semantics(), Semantics::AllowEmpty);
            assert!(solve_xp(&out.system, &SolveOptions::default())
                .unwrap()
                .is_sat());
        }
    }
    let edgeless = gen_clique_two_eq_empty(&Graph::new(3), 2).unwrap();
    assert!(solve_xp(&edgeless.system, &SolveOptions::default())
        .unwrap()
        .is_sat());
}

#[test]
fn structural_shapes() {
    let g = example_graph();
    for kappa in 2..=4 {
        let two = classify(&gen_clique_two_eq(&g, kappa).unwrap().system);
        assert!(two.duplicate_free && two.unique_target);
        assert_eq!(two.r, 2);

        let single = classify(&gen_clique_single_eq(&g, kappa).unwrap().system);
        assert_eq!(single.r, 1);

        let mixed = gen_clique_mixed(&g, kappa).unwrap().system;
        let long: Vec<_> = mixed
            .equations()
            .iter()
            .filter(|e| e.pattern.len() > 2)
            .collect();
        assert_eq!(long.len(), 1);
        let distinct: HashSet<_> = long[0].pattern.iter().collect();
        assert_eq!(distinct.len(), long[0].pattern.len());
    }
}

#[test]
fn every_named_block_is_decodable() {
    let g = example_graph();
    let mut colored = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    colored.set_coloring(vec![1, 1, 2, 3]).unwrap();
    let outs = [
        gen_clique_single_eq(&g, 3).unwrap(),
        gen_clique_two_eq(&g, 3).unwrap(),
        gen_clique_two_eq_empty(&g, 3).unwrap(),
        gen_clique_mixed(&g, 3).unwrap(),
        gen_mcc_size3(&colored, 3).unwrap(),
    ];
    for out in &outs {
        assert_eq!(out.decode_map.len(), out.system.named_block_count());
    }
}

#[test]
fn generators_reject_bad_parameters() {
    let g = example_graph();
    assert_eq!(
        gen_clique_single_eq(&g, 1).unwrap_err(),
        ReductionError::BadKappa(1)
    );
    assert_eq!(
        gen_mcc_size3(&g, 3).unwrap_err(),
        ReductionError::NotColored
    );
}

#[test]
fn lcs_budget_matches_longest_common_subsequence() {
    let lists: &[&[&str]] = &[
        &["abcd", "acbd"],
        &["abab", "baba", "aabb"],
        &["abc", "def"],
        &["aaaa", "aa"],
    ];
    for strings in lists {
        let toks: Vec<Vec<String>> = strings.iter().map(|s| chars(s)).collect();
        let emb = gen_from_lcs_multi(&toks).unwrap();
        let targets: Vec<_> = emb
            .system
            .equations()
            .iter()
            .map(|e| e.target.clone())
            .collect();
        let best = multi_lcs(&targets).len();
        let as_chars: Vec<Vec<char>> = strings.iter().map(|s| s.chars().collect()).collect();
        assert_eq!(best, exhaustive_lcs_len(&as_chars));
        for lambda in 1..=best + 1 {
            let sat = match emb.budget(lambda) {
                Ok(d) => solve_deletions_xp(&emb.system, d, &SolveOptions::default())
                    .unwrap()
                    .is_sat(),
                Err(_) => false,
            };
            assert_eq!(sat, lambda <= best, "{strings:?} lambda={lambda}");
        }
    }
}
