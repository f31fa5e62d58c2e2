//! Moser-Tardos resampling and the shrink-then-resample solver for
//! alpha-intersecting formulas.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Assignment, CnfFormula, MetricsReport, Params};
use crate::shrink::{shrink_formula, witness_unchecked, ShrinkingWitness};
use crate::thresholds::degree_cutoff;

/// `1000 m` resamples, at least one.
pub fn default_max_resamples(m: usize) -> u64 {
    (1000 * m as u64).max(1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResampleOutcome {
    Solved {
        assignment: Assignment,
        resamples: u64,
    },
    Failed {
        resamples: u64,
    },
}

/// Starts from a seeded uniform assignment and repeatedly resamples the
/// variables of the lowest-index violated clause.
pub fn moser_tardos(f: &CnfFormula, seed: u64, max_resamples: u64) -> ResampleOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = Assignment::new((0..f.n()).map(|_| rng.gen::<bool>()).collect());

    let mut occurs: Vec<Vec<(usize, bool)>> = vec![Vec::new(); f.n()];
    for (c, clause) in f.clauses().iter().enumerate() {
        for l in clause.lits() {
            occurs[l.var as usize].push((c, l.negated));
        }
    }
    let mut true_lits: Vec<usize> = f
        .clauses()
        .iter()
        .map(|c| {
            c.lits()
                .iter()
                .filter(|l| l.is_true(a.get(l.var as usize)))
                .count()
        })
        .collect();
    let mut violated: BTreeSet<usize> = (0..f.m()).filter(|&c| true_lits[c] == 0).collect();

    let mut resamples = 0u64;
    while let Some(&c) = violated.first() {
        if resamples >= max_resamples {
            return ResampleOutcome::Failed { resamples };
        }
        resamples += 1;
        for l in f.clauses()[c].lits() {
            let v = l.var as usize;
            let value = rng.gen::<bool>();
            if value == a.get(v) {
                continue;
            }
            a.set(v, value);
            for &(d, negated) in &occurs[v] {
                if value != negated {
                    true_lits[d] += 1;
                    if true_lits[d] == 1 {
                        violated.remove(&d);
                    }
                } else {
                    true_lits[d] -= 1;
                    if true_lits[d] == 0 {
                        violated.insert(d);
                    }
                }
            }
        }
    }
    debug_assert!(f.verify(&a).unwrap_or(false));
    ResampleOutcome::Solved {
        assignment: a,
        resamples,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DegreeCondition {
    /// `2^(k - alpha) / (e k)`.
    pub d_threshold: f64,
    pub max_vertex_degree: usize,
    pub passes: bool,
}

/// Vertex-degree gate on the shrunk `(k - alpha)`-wide formula.
///
/// When it passes every clause meets fewer than `2^(k - alpha) / e` others,
/// which is what the resampler needs.
pub fn degree_condition(shrunk: &CnfFormula, k: usize, alpha: usize) -> Result<DegreeCondition> {
    Params::strict(k, alpha)?;
    shrunk.require_uniform(k - alpha)?;
    let d_threshold = degree_cutoff(k, alpha);
    let max_vertex_degree = shrunk.induced_hypergraph().max_vertex_degree();
    Ok(DegreeCondition {
        d_threshold,
        max_vertex_degree,
        passes: (max_vertex_degree as f64) < d_threshold,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum SolveOutcome {
    Solved {
        assignment: Assignment,
        resamples: u64,
        condition: DegreeCondition,
    },
    /// The degree gate failed; the formula has many high-degree variables.
    NoGuarantee {
        condition: DegreeCondition,
        metrics: MetricsReport,
        witness: ShrinkingWitness,
    },
}

/// Alpha-shrinks `f`, and if the shrunk formula has low degree, solves it by
/// resampling and lifts the assignment back to `f`.
///
/// Variables absent from the shrunk formula are set to false.
pub fn solve_alpha_intersecting(
    f: &CnfFormula,
    k: usize,
    alpha: usize,
    seed: u64,
    max_resamples: Option<u64>,
) -> Result<SolveOutcome> {
    Params::strict(k, alpha)?;
    f.require_uniform(k)?;
    let h = f.induced_hypergraph();
    h.require_alpha_intersecting(alpha)?;

    let shrunk = shrink_formula(f, alpha)?;
    let condition = degree_condition(&shrunk, k, alpha)?;
    if !condition.passes {
        let witness = witness_unchecked(&h, &shrunk.induced_hypergraph(), alpha);
        return Ok(SolveOutcome::NoGuarantee {
            condition,
            metrics: f.metrics(),
            witness,
        });
    }

    let cap = max_resamples.unwrap_or_else(|| default_max_resamples(shrunk.m()));
    match moser_tardos(&shrunk, seed, cap) {
        ResampleOutcome::Solved {
            mut assignment,
            resamples,
        } => {
            let mut used = vec![false; f.n()];
            for c in shrunk.clauses() {
                for l in c.lits() {
                    used[l.var as usize] = true;
                }
            }
            for (v, &u) in used.iter().enumerate() {
                if !u {
                    assignment.set(v, false);
                }
            }
            if !f.verify(&assignment)? {
                return Err(Error::Inconsistent(
                    "lifted assignment does not satisfy the source formula".into(),
                ));
            }
            Ok(SolveOutcome::Solved {
                assignment,
                resamples,
                condition,
            })
        }
        ResampleOutcome::Failed { resamples } => Err(Error::SolverAnomaly(resamples)),
    }
}
