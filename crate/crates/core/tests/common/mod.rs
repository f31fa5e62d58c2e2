#![allow(dead_code)]

use alphasat::{Clause, CnfFormula, Hypergraph, Lit};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_k_set(rng: &mut impl Rng, n: usize, k: usize) -> Vec<u32> {
    let mut e: Vec<u32> = sample(rng, n, k).into_iter().map(|v| v as u32).collect();
    e.sort_unstable();
    e
}

/// Independent random k-sets, duplicates allowed.
pub fn random_multi_hypergraph(rng: &mut impl Rng, n: usize, k: usize, m: usize) -> Hypergraph {
    let edges = (0..m).map(|_| random_k_set(rng, n, k)).collect();
    Hypergraph::new(n, edges).unwrap()
}

pub fn random_signs(rng: &mut impl Rng, h: &Hypergraph) -> CnfFormula {
    let clauses = h
        .edges()
        .iter()
        .map(|e| {
            Clause::new(
                e.iter()
                    .map(|&v| if rng.gen() { Lit::neg(v) } else { Lit::pos(v) })
                    .collect(),
            )
            .unwrap()
        })
        .collect();
    CnfFormula::new(h.n(), clauses).unwrap()
}

/// Random k-CNF in which every clause meets at most `max_degree` others.
pub fn degree_bounded_formula(
    rng: &mut impl Rng,
    n: usize,
    k: usize,
    max_degree: usize,
    attempts: usize,
) -> CnfFormula {
    let mut edges: Vec<Vec<u32>> = Vec::new();
    let mut degree: Vec<usize> = Vec::new();
    let mut incidence: Vec<Vec<usize>> = vec![Vec::new(); n];
    for _ in 0..attempts {
        let cand = random_k_set(rng, n, k);
        let mut nb: Vec<usize> = cand
            .iter()
            .flat_map(|&v| incidence[v as usize].iter().copied())
            .collect();
        nb.sort_unstable();
        nb.dedup();
        if nb.len() > max_degree || nb.iter().any(|&j| degree[j] >= max_degree) {
            continue;
        }
        let id = edges.len();
        for &j in &nb {
            degree[j] += 1;
        }
        degree.push(nb.len());
        for &v in &cand {
            incidence[v as usize].push(id);
        }
        edges.push(cand);
    }
    random_signs(rng, &Hypergraph::new(n, edges).unwrap())
}

// Naive pairwise references.

pub fn naive_shared(a: &[u32], b: &[u32]) -> usize {
    a.iter().filter(|v| b.contains(v)).count()
}

pub fn naive_degrees(h: &Hypergraph) -> Vec<usize> {
    (0..h.n() as u32)
        .map(|v| h.edges().iter().filter(|e| e.contains(&v)).count())
        .collect()
}

pub fn naive_clause_degree(h: &Hypergraph, j: usize) -> usize {
    let e = &h.edges()[j];
    (0..h.m())
        .filter(|&l| l != j && naive_shared(e, &h.edges()[l]) > 0)
        .count()
}

pub fn naive_pairs(h: &Hypergraph) -> usize {
    let mut count = 0;
    for a in 0..h.m() {
        for b in a + 1..h.m() {
            if naive_shared(&h.edges()[a], &h.edges()[b]) > 0 {
                count += 1;
            }
        }
    }
    count
}

pub fn naive_max_shared(h: &Hypergraph) -> usize {
    let mut best = 0;
    for a in 0..h.m() {
        for b in a + 1..h.m() {
            best = best.max(naive_shared(&h.edges()[a], &h.edges()[b]));
        }
    }
    best
}

/// Model count by evaluating every clause literal by literal.
pub fn naive_models(f: &CnfFormula) -> u64 {
    (0..1u64 << f.n())
        .filter(|&x| {
            f.clauses().iter().all(|c| {
                c.lits()
                    .iter()
                    .any(|l| ((x >> l.var) & 1 == 1) != l.negated)
            })
        })
        .count() as u64
}
