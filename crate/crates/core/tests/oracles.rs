//! Fast routes checked against naive pairwise and enumerative references.

mod common;

use alphasat::lll::{moser_tardos, ResampleOutcome};
use alphasat::maximal::{build_maximal, verify_maximality, BuildMode, MaximalityCheck};
use alphasat::oracle::{brute_force_sat, count_models, SatResult};
use alphasat::shrink::shrink_hypergraph;
use alphasat::unsat::{best_polarity, clause_cover_set, CoverageSet};
use alphasat::{AlphaCheck, Clause, CoverageCap, Hypergraph};
use common::*;
use rand::Rng;

#[test]
fn metrics_match_pairwise_enumeration() {
    let mut r = rng(1);
    for _ in 0..200 {
        let n = r.gen_range(3..15);
        let k = r.gen_range(1..=n.min(5));
        let m = r.gen_range(0..25);
        let h = random_multi_hypergraph(&mut r, n, k, m);
        assert_eq!(h.vertex_degrees(), naive_degrees(&h));
        assert_eq!(h.intersection_pairs(), naive_pairs(&h));
        for j in 0..m {
            assert_eq!(h.clause_degree(j).unwrap(), naive_clause_degree(&h, j));
        }
        let f = random_signs(&mut r, &h);
        let rep = f.metrics();
        assert_eq!(rep.alpha_measured, naive_max_shared(&h));
        assert_eq!(
            rep.delta_clause,
            (0..m)
                .map(|j| naive_clause_degree(&h, j))
                .max()
                .unwrap_or(0)
        );
    }
}

#[test]
fn alpha_witness_is_first_violating_pair() {
    let mut r = rng(2);
    for _ in 0..200 {
        let n = r.gen_range(4..10);
        let k = r.gen_range(2..=4.min(n));
        let m = r.gen_range(0..12);
        let h = random_multi_hypergraph(&mut r, n, k, m);
        let alpha = r.gen_range(1..k);
        let mut expected = AlphaCheck::Ok;
        'outer: for a in 0..h.m() {
            for b in a + 1..h.m() {
                let shared = naive_shared(&h.edges()[a], &h.edges()[b]);
                if shared > alpha {
                    expected = AlphaCheck::Violation { a, b, shared };
                    break 'outer;
                }
            }
        }
        assert_eq!(h.check_alpha_intersecting(alpha), expected);
    }
}

#[test]
fn shrink_example_by_hand_rule() {
    // degrees recomputed here: 0 has 3, 1/3/5 have 2, the rest 1
    let h = Hypergraph::new(
        7,
        vec![vec![0, 1, 2], vec![0, 3, 4], vec![0, 5, 6], vec![1, 3, 5]],
    )
    .unwrap();
    let deg = naive_degrees(&h);
    assert_eq!(deg, vec![3, 2, 1, 2, 1, 2, 1]);
    let expected: Vec<Vec<u32>> = h
        .edges()
        .iter()
        .map(|e| {
            let top = *e
                .iter()
                .max_by(|&&a, &&b| deg[a as usize].cmp(&deg[b as usize]).then(b.cmp(&a)))
                .unwrap();
            e.iter().copied().filter(|&v| v != top).collect()
        })
        .collect();
    assert_eq!(
        expected,
        vec![vec![1, 2], vec![3, 4], vec![5, 6], vec![3, 5]]
    );
    assert_eq!(shrink_hypergraph(&h, 1).unwrap().edges(), &expected[..]);
}

#[test]
fn polarity_matches_pattern_enumeration() {
    let cap = CoverageCap::default();
    let mut r = rng(3);
    for _ in 0..100 {
        let n = r.gen_range(2..9);
        let k = r.gen_range(1..=n.min(4));
        let mut cov = CoverageSet::new(n, cap).unwrap();
        let m = r.gen_range(0..6);
        for e in random_multi_hypergraph(&mut r, n, k, m).edges() {
            let c = Clause::from_pattern(e, r.gen_range(0..1u64 << k));
            cov.cover(&c);
        }
        let edge = random_k_set(&mut r, n, k);
        let counts: Vec<u64> = (0..1u64 << k)
            .map(|p| {
                clause_cover_set(&Clause::from_pattern(&edge, p), n, cap)
                    .unwrap()
                    .into_iter()
                    .filter(|&a| !cov.is_covered(a))
                    .count() as u64
            })
            .collect();
        let best = *counts.iter().max().unwrap();
        let first = counts.iter().position(|&c| c == best).unwrap() as u64;
        let (clause, fresh) = best_polarity(&edge, &cov);
        assert_eq!(fresh, best);
        assert_eq!(clause, Clause::from_pattern(&edge, first));
    }
}

#[test]
fn second_step_of_two_variable_example() {
    // uncovered {1,2,3}: patterns 1, 2, 3 each cover one, pattern 0 covers none
    let cap = CoverageCap::default();
    let mut cov = CoverageSet::new(2, cap).unwrap();
    cov.cover(&Clause::from_pattern(&[0, 1], 0));
    let uncovered: Vec<u64> = cov.uncovered().collect();
    assert_eq!(uncovered, vec![1, 2, 3]);
    let (clause, fresh) = best_polarity(&[0, 1], &cov);
    assert_eq!(clause, Clause::from_pattern(&[0, 1], 1));
    assert_eq!(fresh, 1);
}

#[test]
fn oracle_agrees_with_literal_evaluation() {
    let cap = CoverageCap::default();
    let mut r = rng(4);
    for _ in 0..200 {
        let n = r.gen_range(1..10);
        let k = r.gen_range(1..=n.min(3));
        let m = r.gen_range(0..30);
        let h = random_multi_hypergraph(&mut r, n, k, m);
        let f = random_signs(&mut r, &h);
        let count = count_models(&f, cap).unwrap();
        assert_eq!(count, naive_models(&f));
        match brute_force_sat(&f, cap).unwrap() {
            SatResult::Sat(a) => {
                assert!(count > 0);
                assert!(f.verify(&a).unwrap());
                let idx: u64 = a
                    .bits()
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| (b as u64) << i)
                    .sum();
                assert!(
                    (0..idx).all(|x| !f.verify(&alphasat::Assignment::from_index(n, x)).unwrap())
                );
            }
            SatResult::Unsat => assert_eq!(count, 0),
        }
    }
}

#[test]
fn maximality_scan_matches_pairwise_addability() {
    for seed in 0..10 {
        let b = build_maximal(8, 3, 1, seed, BuildMode::default()).unwrap();
        let h = &b.hypergraph;
        let mut full = Vec::new();
        for a in 0..8u32 {
            for bb in a + 1..8 {
                for c in bb + 1..8 {
                    full.push(vec![a, bb, c]);
                }
            }
        }
        let addable = full
            .iter()
            .any(|cand| h.edges().iter().all(|e| naive_shared(e, cand) <= 1));
        assert!(!addable);
        assert!(verify_maximality(h, 3, 1, 1_000, 0).unwrap().is_maximal());

        // removing an edge makes it addable again
        let mut edges = h.edges().to_vec();
        edges.remove(0);
        let smaller = Hypergraph::new(8, edges).unwrap();
        match verify_maximality(&smaller, 3, 1, 1_000, 0).unwrap() {
            MaximalityCheck::Addable(w) => {
                assert!(smaller.edges().iter().all(|e| naive_shared(e, &w) <= 1));
            }
            other => panic!("{other:?}"),
        }
    }
}

#[test]
fn resampler_output_always_verifies() {
    let mut r = rng(5);
    for seed in 0..50 {
        let f = degree_bounded_formula(&mut r, 60, 5, 11, 200);
        match moser_tardos(&f, seed, 1000 * f.m() as u64 + 1) {
            ResampleOutcome::Solved { assignment, .. } => assert!(f.verify(&assignment).unwrap()),
            ResampleOutcome::Failed { .. } => panic!("degree-bounded instance unsolved"),
        }
    }
}
