//! Greedy polarity choice turning a dense k-uniform hypergraph into an
//! unsatisfiable k-CNF.
//!
//! A clause covers an assignment when the assignment falsifies it. The
//! `2^k` sign choices for one edge partition all assignments, so the best
//! choice covers at least a `2^-k` fraction of what is still uncovered.
//! Assignment `a` is the integer whose bit `i` is the value of variable `i`.

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::CoverageCap;
use crate::error::{Error, Result};
use crate::model::{Clause, CnfFormula, Hypergraph};

/// Bitset over all `2^n` assignments recording which are covered.
#[derive(Debug, Clone)]
pub struct CoverageSet {
    n: usize,
    covered: FixedBitSet,
    covered_count: u64,
}

impl CoverageSet {
    pub fn new(n: usize, cap: CoverageCap) -> Result<Self> {
        cap.check(n)?;
        Ok(CoverageSet {
            n,
            covered: FixedBitSet::with_capacity(1usize << n),
            covered_count: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total(&self) -> u64 {
        1u64 << self.n
    }

    pub fn covered_count(&self) -> u64 {
        self.covered_count
    }

    pub fn uncovered_count(&self) -> u64 {
        self.total() - self.covered_count
    }

    pub fn is_covered(&self, assignment: u64) -> bool {
        self.covered.contains(assignment as usize)
    }

    /// Marks every assignment falsifying `clause`; returns how many were new.
    pub fn cover(&mut self, clause: &Clause) -> u64 {
        let mut fresh = 0;
        for_each_falsifier(clause, self.n, |a| {
            if !self.covered.put(a as usize) {
                fresh += 1;
            }
        });
        self.covered_count += fresh;
        fresh
    }

    /// Uncovered assignments, ascending.
    pub fn uncovered(&self) -> impl Iterator<Item = u64> + '_ {
        self.covered.zeroes().map(|a| a as u64)
    }
}

/// Runs `f` on each of the `2^(n-k)` assignments falsifying `clause`.
fn for_each_falsifier<F: FnMut(u64)>(clause: &Clause, n: usize, mut f: F) {
    let mut fixed = 0u64;
    let mut base = 0u64;
    for l in clause.lits() {
        fixed |= 1 << l.var;
        if l.negated {
            base |= 1 << l.var;
        }
    }
    let free = ((1u64 << n) - 1) & !fixed;
    let mut sub = free;
    loop {
        f(base | sub);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
}

/// The assignments falsifying `clause`, ascending.
pub fn clause_cover_set(clause: &Clause, n: usize, cap: CoverageCap) -> Result<Vec<u64>> {
    cap.check(n)?;
    if let Some(l) = clause.lits().iter().find(|l| l.var as usize >= n) {
        return Err(Error::VertexOutOfRange {
            vertex: l.var as u64,
            n,
        });
    }
    let mut out = Vec::with_capacity(1 << (n - clause.width()));
    for_each_falsifier(clause, n, |a| out.push(a));
    out.sort_unstable();
    Ok(out)
}

/// Sign pattern for `edge` covering the most uncovered assignments, ties to the smallest pattern.
///
/// Pattern bit `j` negates the `j`-th smallest vertex of the edge; pattern
/// `p` covers exactly the assignments whose bits on the edge spell `p`.
pub fn best_polarity(edge: &[u32], coverage: &CoverageSet) -> (Clause, u64) {
    let k = edge.len();
    let mut counts = vec![0u64; 1usize << k];
    for a in coverage.uncovered() {
        let mut p = 0usize;
        for (j, &v) in edge.iter().enumerate() {
            p |= ((a >> v) as usize & 1) << j;
        }
        counts[p] += 1;
    }
    let mut best = 0usize;
    for (p, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = p;
        }
    }
    (Clause::from_pattern(edge, best as u64), counts[best])
}

/// Order in which edges receive their clauses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgeOrder {
    #[default]
    Input,
    Shuffle {
        seed: u64,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct UnsatBuild {
    #[serde(skip)]
    pub formula: CnfFormula,
    /// Assignments left uncovered, i.e. models of `formula`.
    pub final_uncovered: u64,
    /// Uncovered count before the first step and after each step, in processing order.
    pub trace: Vec<u64>,
}

impl UnsatBuild {
    pub fn is_unsat(&self) -> bool {
        self.final_uncovered == 0
    }
}

/// One greedy clause per edge. Clause `j` always belongs to edge `j`, whatever the processing order.
pub fn build_unsat(h: &Hypergraph, order: EdgeOrder, cap: CoverageCap) -> Result<UnsatBuild> {
    h.width_checked()?;
    let mut coverage = CoverageSet::new(h.n(), cap)?;
    let mut visit: Vec<usize> = (0..h.m()).collect();
    if let EdgeOrder::Shuffle { seed } = order {
        visit.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut clauses: Vec<Option<Clause>> = vec![None; h.m()];
    let mut trace = Vec::with_capacity(h.m() + 1);
    trace.push(coverage.uncovered_count());
    for j in visit {
        let (clause, _) = best_polarity(&h.edges()[j], &coverage);
        coverage.cover(&clause);
        trace.push(coverage.uncovered_count());
        clauses[j] = Some(clause);
    }
    let formula = CnfFormula::new(h.n(), clauses.into_iter().map(Option::unwrap).collect())?;
    Ok(UnsatBuild {
        formula,
        final_uncovered: coverage.uncovered_count(),
        trace,
    })
}
