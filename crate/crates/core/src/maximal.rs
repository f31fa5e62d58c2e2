//! Greedy construction of maximal alpha-intersecting k-uniform hypergraphs.
//!
//! A k-set can join an alpha-intersecting hypergraph exactly when none of
//! its (alpha+1)-subsets already lies inside an existing edge, so the
//! builder keeps every covered (alpha+1)-subset in a [`CoverIndex`].

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::binom::{binomial, div_ceil, for_each_subset, BinomialTable};
use crate::error::{Error, Result};
use crate::model::{Clause, CnfFormula, Hypergraph};

/// Largest `C(n, k)` that [`build_maximal`] enumerates by default.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 24;
/// Consecutive rejections after which sampling gives up.
pub const DEFAULT_SAMPLING_PATIENCE: u64 = 100_000;
/// Above this many candidates the random-formula generator samples instead of enumerating.
const GENERATOR_ENUMERATION_LIMIT: u128 = 1 << 20;

/// The (alpha+1)-subsets covered by chosen edges, each stored once.
#[derive(Debug, Clone)]
pub struct CoverIndex {
    n: u128,
    width: usize,
    keys: HashSet<u128>,
}

impl CoverIndex {
    /// Index of `width`-subsets of `0..n`; subsets are packed base `n` into a `u128`.
    pub fn new(n: usize, width: usize) -> Result<Self> {
        let n = n.max(2) as u128;
        let mut cap: u128 = 1;
        for _ in 0..width {
            cap = cap
                .checked_mul(n)
                .ok_or(Error::Overflow("cover index key"))?;
        }
        Ok(CoverIndex {
            n,
            width,
            keys: HashSet::new(),
        })
    }

    fn key(&self, subset: &[u32]) -> u128 {
        debug_assert_eq!(subset.len(), self.width);
        subset
            .iter()
            .fold(0u128, |acc, &v| acc * self.n + v as u128)
    }

    pub fn contains(&self, subset: &[u32]) -> bool {
        self.keys.contains(&self.key(subset))
    }

    /// Inserts a subset, returning `false` if it was already covered.
    pub fn insert(&mut self, subset: &[u32]) -> bool {
        let key = self.key(subset);
        self.keys.insert(key)
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// True when some `width`-subset of the sorted `edge` is covered.
    pub fn hits(&self, edge: &[u32]) -> bool {
        let mut hit = false;
        for_each_subset(edge, self.width, |s| hit = hit || self.contains(s));
        hit
    }
}

/// `ceil(C(n, alpha+1) / C(k, alpha+1)^2)`, the edge-count floor for maximal hypergraphs.
pub fn min_edges_bound(n: usize, k: usize, alpha: usize) -> Result<u128> {
    if !(n >= k && k > alpha && alpha >= 1) {
        return Err(Error::InvalidParams(format!(
            "need n >= k > alpha >= 1, got n = {n}, k = {k}, alpha = {alpha}"
        )));
    }
    let r = alpha as u64 + 1;
    let top = binomial(n as u64, r).ok_or(Error::Overflow("C(n, alpha+1)"))?;
    let per_edge = binomial(k as u64, r).ok_or(Error::Overflow("C(k, alpha+1)"))?;
    let denom = per_edge
        .checked_mul(per_edge)
        .ok_or(Error::Overflow("C(k, alpha+1)^2"))?;
    Ok(div_ceil(top, denom))
}

/// Candidate visiting strategy for [`build_maximal`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildMode {
    /// Visit all `C(n, k)` candidates in seeded random order; errors if there are more than `budget`.
    Exhaustive { budget: u64 },
    /// Draw random k-sets until `patience` consecutive ones are rejected. Not certified maximal.
    Sampling { patience: u64 },
}

impl Default for BuildMode {
    fn default() -> Self {
        BuildMode::Exhaustive {
            budget: DEFAULT_ENUMERATION_BUDGET,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MaximalBuild {
    pub hypergraph: Hypergraph,
    /// True when every candidate was visited, so the output is maximal.
    pub certified_maximal: bool,
    pub cover_index_size: usize,
}

/// Incremental alpha-intersecting edge set.
#[derive(Debug, Clone)]
pub struct GreedyBuilder {
    n: usize,
    k: usize,
    index: CoverIndex,
    edges: Vec<Vec<u32>>,
}

impl GreedyBuilder {
    pub fn new(n: usize, k: usize, alpha: usize) -> Result<Self> {
        if !(n >= k && k > alpha && alpha >= 1) {
            return Err(Error::InvalidParams(format!(
                "need n >= k > alpha >= 1, got n = {n}, k = {k}, alpha = {alpha}"
            )));
        }
        Ok(GreedyBuilder {
            n,
            k,
            index: CoverIndex::new(n, alpha + 1)?,
            edges: Vec::new(),
        })
    }

    /// Adds the sorted k-set unless it would share more than alpha vertices with an edge.
    pub fn try_add(&mut self, edge: &[u32]) -> bool {
        debug_assert_eq!(edge.len(), self.k);
        if self.index.hits(edge) {
            return false;
        }
        let index = &mut self.index;
        for_each_subset(edge, index.width, |s| {
            index.insert(s);
        });
        self.edges.push(edge.to_vec());
        true
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn cover_index(&self) -> &CoverIndex {
        &self.index
    }

    pub fn finish(self) -> Hypergraph {
        Hypergraph::from_sorted_unchecked(self.n, self.edges)
    }

    /// Runs the greedy until maximal (or `target` edges). Returns whether every candidate was visited.
    fn grow(
        &mut self,
        rng: &mut ChaCha8Rng,
        mode: BuildMode,
        target: Option<usize>,
    ) -> Result<bool> {
        let reached = |b: &Self| target.is_some_and(|t| b.m() >= t);
        if reached(self) {
            return Ok(false);
        }
        match mode {
            BuildMode::Exhaustive { budget } => {
                let total = binomial(self.n as u64, self.k as u64).unwrap_or(u128::MAX);
                let budget = budget.min(u32::MAX as u64);
                if total > budget as u128 {
                    return Err(Error::EnumerationBudget {
                        candidates: total,
                        budget,
                    });
                }
                let mut order: Vec<u32> = (0..total as u32).collect();
                order.shuffle(rng);
                let table = BinomialTable::new(self.n, self.k);
                let mut cand = Vec::with_capacity(self.k);
                for rank in order {
                    table.unrank(self.n, self.k, rank as u64, &mut cand);
                    if self.try_add(&cand) && reached(self) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            BuildMode::Sampling { patience } => {
                let mut misses = 0u64;
                let mut cand = Vec::with_capacity(self.k);
                while misses < patience {
                    random_k_set(rng, self.n, self.k, &mut cand);
                    if self.try_add(&cand) {
                        misses = 0;
                        if reached(self) {
                            break;
                        }
                    } else {
                        misses += 1;
                    }
                }
                Ok(false)
            }
        }
    }
}

pub(crate) fn random_k_set<R: Rng>(rng: &mut R, n: usize, k: usize, out: &mut Vec<u32>) {
    out.clear();
    out.extend(
        rand::seq::index::sample(rng, n, k)
            .into_iter()
            .map(|v| v as u32),
    );
    out.sort_unstable();
}

/// Builds a simple k-uniform alpha-intersecting hypergraph by seeded random greedy.
pub fn build_maximal(
    n: usize,
    k: usize,
    alpha: usize,
    seed: u64,
    mode: BuildMode,
) -> Result<MaximalBuild> {
    let mut builder = GreedyBuilder::new(n, k, alpha)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let certified = builder.grow(&mut rng, mode, None)?;
    let cover_index_size = builder.cover_index().len();
    Ok(MaximalBuild {
        hypergraph: builder.finish(),
        certified_maximal: certified,
        cover_index_size,
    })
}

/// Result of a maximality scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum MaximalityCheck {
    /// No tested k-set could be added.
    Maximal { exhaustive: bool, tested: u64 },
    /// A k-set that can be added without breaking alpha-intersection.
    Addable(Vec<u32>),
}

impl MaximalityCheck {
    pub fn is_maximal(&self) -> bool {
        matches!(self, MaximalityCheck::Maximal { .. })
    }
}

/// Looks for a k-set containing no covered (alpha+1)-subset.
///
/// Exhaustive over all `C(n, k)` k-sets when that is at most `budget`,
/// otherwise `budget` uniformly sampled k-sets.
pub fn verify_maximality(
    h: &Hypergraph,
    k: usize,
    alpha: usize,
    budget: u64,
    seed: u64,
) -> Result<MaximalityCheck> {
    h.require_uniform(k)?;
    if !(h.n() >= k && k > alpha && alpha >= 1) {
        return Err(Error::InvalidParams(format!(
            "need n >= k > alpha >= 1, got n = {}, k = {k}, alpha = {alpha}",
            h.n()
        )));
    }
    let mut index = CoverIndex::new(h.n(), alpha + 1)?;
    for e in h.edges() {
        for_each_subset(e, alpha + 1, |s| {
            index.insert(s);
        });
    }
    let total = binomial(h.n() as u64, k as u64).unwrap_or(u128::MAX);
    let mut cand = Vec::with_capacity(k);
    if total <= budget as u128 {
        let table = BinomialTable::new(h.n(), k);
        for rank in 0..total as u64 {
            table.unrank(h.n(), k, rank, &mut cand);
            if !index.hits(&cand) {
                return Ok(MaximalityCheck::Addable(cand));
            }
        }
        Ok(MaximalityCheck::Maximal {
            exhaustive: true,
            tested: total as u64,
        })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..budget {
            random_k_set(&mut rng, h.n(), k, &mut cand);
            if !index.hits(&cand) {
                return Ok(MaximalityCheck::Addable(cand));
            }
        }
        Ok(MaximalityCheck::Maximal {
            exhaustive: false,
            tested: budget,
        })
    }
}

/// Random alpha-intersecting k-CNF with exactly `m_target` clauses and uniform random signs.
pub fn gen_random_alpha_formula(
    n: usize,
    k: usize,
    alpha: usize,
    m_target: usize,
    seed: u64,
) -> Result<CnfFormula> {
    if m_target == 0 {
        return Ok(CnfFormula::empty(n));
    }
    let mut builder = GreedyBuilder::new(n, k, alpha)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = binomial(n as u64, k as u64).unwrap_or(u128::MAX);
    let mode = if total <= GENERATOR_ENUMERATION_LIMIT {
        BuildMode::Exhaustive {
            budget: GENERATOR_ENUMERATION_LIMIT as u64,
        }
    } else {
        BuildMode::Sampling {
            patience: DEFAULT_SAMPLING_PATIENCE,
        }
    };
    builder.grow(&mut rng, mode, Some(m_target))?;
    if builder.m() < m_target {
        return Err(Error::TargetUnreachable {
            target: m_target,
            reached: builder.m(),
        });
    }
    let h = builder.finish();
    let clauses = h
        .edges()
        .iter()
        .map(|e| Clause::from_pattern(e, rng.gen::<u64>()))
        .collect();
    CnfFormula::new(n, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k9_minus(skip: Option<(u32, u32)>) -> Hypergraph {
        let mut edges = Vec::new();
        for a in 0..9u32 {
            for b in a + 1..9 {
                if Some((a, b)) != skip {
                    edges.push(vec![a, b]);
                }
            }
        }
        Hypergraph::new(9, edges).unwrap()
    }

    #[test]
    fn bound_values() {
        assert_eq!(min_edges_bound(7, 3, 1).unwrap(), 3);
        assert_eq!(min_edges_bound(9, 2, 1).unwrap(), 36);
        for k in 2..8 {
            for alpha in 1..k {
                assert_eq!(min_edges_bound(k, k, alpha).unwrap(), 1);
            }
        }
        assert!(min_edges_bound(2, 3, 1).is_err());
        assert!(min_edges_bound(5, 3, 3).is_err());
        assert!(min_edges_bound(5, 3, 0).is_err());
    }

    #[test]
    fn complete_graph_is_forced() {
        for seed in 0..5 {
            let b = build_maximal(9, 2, 1, seed, BuildMode::default()).unwrap();
            assert_eq!(b.hypergraph.m(), 36);
            assert!(b.certified_maximal);
            assert_eq!(b.cover_index_size, 36);
        }
    }

    #[test]
    fn single_edge_when_n_equals_k() {
        let b = build_maximal(3, 3, 1, 7, BuildMode::default()).unwrap();
        assert_eq!(b.hypergraph.edges(), &[vec![0, 1, 2]]);
        let v = verify_maximality(&b.hypergraph, 3, 1, 1_000, 0).unwrap();
        assert!(v.is_maximal());
    }

    #[test]
    fn seven_vertex_triples() {
        for seed in 0..20 {
            let b = build_maximal(7, 3, 1, seed, BuildMode::default()).unwrap();
            let h = &b.hypergraph;
            assert!((3..=7).contains(&h.m()), "m = {}", h.m());
            assert!(h.check_alpha_intersecting(1).is_ok());
            assert_eq!(
                verify_maximality(h, 3, 1, 1_000, 0).unwrap(),
                MaximalityCheck::Maximal {
                    exhaustive: true,
                    tested: 35
                }
            );
            assert_eq!(b.cover_index_size, h.m() * 3);
        }
    }

    #[test]
    fn determinism() {
        let a = build_maximal(12, 4, 2, 99, BuildMode::default()).unwrap();
        let b = build_maximal(12, 4, 2, 99, BuildMode::default()).unwrap();
        assert_eq!(a.hypergraph, b.hypergraph);
        let c = build_maximal(12, 4, 2, 100, BuildMode::default()).unwrap();
        assert_ne!(a.hypergraph, c.hypergraph);
    }

    #[test]
    fn maximality_witness() {
        assert_eq!(
            verify_maximality(&k9_minus(None), 2, 1, 1_000, 0).unwrap(),
            MaximalityCheck::Maximal {
                exhaustive: true,
                tested: 36
            }
        );
        assert_eq!(
            verify_maximality(&k9_minus(Some((3, 7))), 2, 1, 1_000, 0).unwrap(),
            MaximalityCheck::Addable(vec![3, 7])
        );
    }

    #[test]
    fn budget_and_sampling() {
        let err = build_maximal(30, 5, 1, 0, BuildMode::Exhaustive { budget: 1000 });
        assert!(matches!(err, Err(Error::EnumerationBudget { .. })));
        let b = build_maximal(30, 5, 1, 0, BuildMode::Sampling { patience: 2000 }).unwrap();
        assert!(!b.certified_maximal);
        assert!(b.hypergraph.check_alpha_intersecting(1).is_ok());
        assert!(b.hypergraph.m() > 0);
    }

    #[test]
    fn random_formulas() {
        assert_eq!(gen_random_alpha_formula(10, 3, 1, 0, 1).unwrap().m(), 0);
        let one = gen_random_alpha_formula(10, 3, 1, 1, 1).unwrap();
        assert_eq!(one.m(), 1);
        assert_eq!(one.uniform_width(), Some(3));

        let f = gen_random_alpha_formula(3000, 12, 1, 300, 5).unwrap();
        assert_eq!(f.m(), 300);
        assert_eq!(f.uniform_width(), Some(12));
        assert!(f.induced_hypergraph().check_alpha_intersecting(1).is_ok());
        assert_eq!(f, gen_random_alpha_formula(3000, 12, 1, 300, 5).unwrap());

        // at most 12 linear triples fit on 9 vertices
        assert!(matches!(
            gen_random_alpha_formula(9, 3, 1, 13, 0),
            Err(Error::TargetUnreachable { target: 13, .. })
        ));
    }
}
