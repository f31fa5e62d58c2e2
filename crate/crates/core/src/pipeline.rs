//! End-to-end unsatisfiable construction: build a maximal alpha-intersecting
//! `(k + alpha)`-uniform hypergraph, optionally give it greedy polarities,
//! alpha-shrink it to width `k`, and check the structural bounds the
//! construction promises.

use serde::Serialize;

use crate::binom::binomial;
use crate::config::CoverageCap;
use crate::error::{Error, Result};
use crate::maximal::{
    build_maximal, min_edges_bound, BuildMode, DEFAULT_ENUMERATION_BUDGET,
    DEFAULT_SAMPLING_PATIENCE,
};
use crate::model::{CnfFormula, Hypergraph, MetricsReport, Params};
use crate::oracle::{brute_force_sat, SatResult};
use crate::shrink::{shrink_formula, shrink_hypergraph, witness_unchecked, ShrinkingWitness};
use crate::thresholds::{upper_bounds, UpperBounds};
use crate::unsat::{build_unsat, EdgeOrder};

/// `n * 2^(k + alpha)`, the edge count needed before polarities can cover every assignment.
pub fn required_edges(n: usize, k: usize, alpha: usize) -> Result<u128> {
    let shift = (k + alpha) as u32;
    if shift >= 100 {
        return Err(Error::Overflow("2^(k + alpha)"));
    }
    (n as u128)
        .checked_mul(1u128 << shift)
        .ok_or(Error::Overflow("n * 2^(k + alpha)"))
}

/// Smallest `n` whose maximal `(k+alpha)`-uniform hypergraphs are guaranteed
/// at least `n * 2^(k + alpha)` edges by [`min_edges_bound`].
pub fn auto_n(k: usize, alpha: usize) -> Result<usize> {
    Params::strict(k, alpha)?;
    let width = k + alpha;
    let holds = |n: usize| -> Result<bool> {
        Ok(min_edges_bound(n, width, alpha)? >= required_edges(n, k, alpha)?)
    };
    // Without the ceiling the test is monotone in n; binary search that, then
    // step down while the ceiling still admits smaller n.
    let per_edge =
        binomial(width as u64, alpha as u64 + 1).ok_or(Error::Overflow("C(k, alpha+1)"))?;
    let sq = per_edge
        .checked_mul(per_edge)
        .ok_or(Error::Overflow("C(k, alpha+1)^2"))?;
    let exact = |n: usize| -> Result<bool> {
        let top = binomial(n as u64, alpha as u64 + 1).ok_or(Error::Overflow("C(n, alpha+1)"))?;
        let need = required_edges(n, k, alpha)?
            .checked_mul(sq)
            .ok_or(Error::Overflow("auto_n"))?;
        Ok(top >= need)
    };
    let mut lo = width;
    let mut hi = width;
    while !exact(hi)? {
        lo = hi;
        hi = hi
            .checked_mul(2)
            .filter(|&h| h < 1 << 48)
            .ok_or(Error::Overflow("auto_n"))?;
    }
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if exact(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut n = hi;
    while n > width && holds(n - 1)? {
        n -= 1;
    }
    Ok(n)
}

#[derive(Debug, Clone, Copy)]
pub struct PipelineOptions {
    pub n_override: Option<usize>,
    pub with_polarity: bool,
    pub seed: u64,
    /// Candidate count up to which the hypergraph is built exhaustively.
    pub enumeration_budget: u64,
    /// Consecutive rejections that end sampling mode beyond the budget.
    pub sampling_patience: u64,
    pub cap: CoverageCap,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            n_override: None,
            with_polarity: false,
            seed: 0,
            enumeration_budget: DEFAULT_ENUMERATION_BUDGET,
            sampling_patience: DEFAULT_SAMPLING_PATIENCE,
            cap: CoverageCap::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PolarityReport {
    pub final_uncovered: u64,
    /// Oracle verdict on the shrunk formula.
    pub shrunk_unsat: bool,
    pub shrunk_induces_shrunk_hypergraph: bool,
}

/// Measured quantities next to the construction's upper bounds.
#[derive(Debug, Clone, Serialize)]
pub struct UpperComparison {
    pub bounds: UpperBounds,
    /// `alpha 2^(k+alpha) k^3`, an alternative degree bound.
    pub u_delta_cubic: f64,
    pub n_within_u_n: bool,
    pub m_within_u_m: bool,
    pub delta_within_u_delta: bool,
    pub delta_within_u_delta_cubic: bool,
    pub i_within_u_i: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PipelineReport {
    pub k: usize,
    pub alpha: usize,
    pub n: usize,
    pub m: usize,
    pub certified_maximal: bool,
    pub min_edges_bound: u128,
    pub required_edges: u128,
    pub source_alpha_intersecting: bool,
    pub shrunk_width: Option<usize>,
    pub shrunk_alpha_intersecting: bool,
    pub shrunk: MetricsReport,
    /// `(m (k + alpha))^(1 / (1 + 1/alpha))`.
    pub degree_bound: f64,
    pub degree_bound_ok: bool,
    /// `i <= m * delta_clause` on the shrunk hypergraph.
    pub intersections_ok: bool,
    /// `i <= m * delta_vertex` on the shrunk hypergraph.
    pub intersections_vs_vertex_degree: bool,
    pub witness: ShrinkingWitness,
    pub upper: UpperComparison,
    pub polarity: Option<PolarityReport>,
}

impl PipelineReport {
    /// Every asserted structural property holds.
    pub fn all_ok(&self) -> bool {
        self.m as u128 >= self.required_edges
            && self.source_alpha_intersecting
            && self.shrunk_width.map_or(self.m == 0, |w| w == self.k)
            && self.shrunk_alpha_intersecting
            && self.degree_bound_ok
            && self.intersections_ok
            && self.witness.holds()
            && self
                .polarity
                .as_ref()
                .is_none_or(|p| p.final_uncovered == 0 && p.shrunk_unsat)
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub hypergraph: Hypergraph,
    pub shrunk: Hypergraph,
    pub formula: Option<CnfFormula>,
    pub shrunk_formula: Option<CnfFormula>,
    pub report: PipelineReport,
}

/// `delta^(alpha+1) <= (m w)^alpha`, exactly when it fits in `u128`.
fn degree_within(delta: usize, m: usize, width: usize, alpha: usize) -> bool {
    let lhs = (0..=alpha).try_fold(1u128, |acc, _| acc.checked_mul(delta as u128));
    let base = (m as u128) * (width as u128);
    let rhs = (0..alpha).try_fold(1u128, |acc, _| acc.checked_mul(base));
    match (lhs, rhs) {
        (Some(l), Some(r)) => l <= r,
        _ => (delta as f64) <= (base as f64).powf(alpha as f64 / (alpha as f64 + 1.0)),
    }
}

/// Greedy polarities for `h`, then the alpha-shrunk formula and its oracle verdict.
pub fn polarize_and_shrink(
    h: &Hypergraph,
    alpha: usize,
    cap: CoverageCap,
) -> Result<(CnfFormula, CnfFormula, PolarityReport)> {
    let unsat = build_unsat(h, EdgeOrder::Input, cap)?;
    let shrunk_formula = shrink_formula(&unsat.formula, alpha)?;
    let shrunk_unsat = brute_force_sat(&shrunk_formula, cap)? == SatResult::Unsat;
    let report = PolarityReport {
        final_uncovered: unsat.final_uncovered,
        shrunk_unsat,
        shrunk_induces_shrunk_hypergraph: shrunk_formula.induced_hypergraph()
            == shrink_hypergraph(h, alpha)?,
    };
    Ok((unsat.formula, shrunk_formula, report))
}

pub fn upper_bound_pipeline(
    k: usize,
    alpha: usize,
    opts: &PipelineOptions,
) -> Result<PipelineOutput> {
    Params::strict(k, alpha)?;
    let width = k + alpha;
    let n = match opts.n_override {
        Some(n) => n,
        None => auto_n(k, alpha)?,
    };
    if opts.with_polarity {
        opts.cap.check(n)?;
    }

    let candidates = binomial(n as u64, width as u64).unwrap_or(u128::MAX);
    let mode = if candidates <= opts.enumeration_budget as u128 {
        BuildMode::Exhaustive {
            budget: opts.enumeration_budget,
        }
    } else {
        BuildMode::Sampling {
            patience: opts.sampling_patience,
        }
    };
    let build = build_maximal(n, width, alpha, opts.seed, mode)?;
    let h = build.hypergraph;
    let required = required_edges(n, k, alpha)?;
    if (h.m() as u128) < required {
        return Err(Error::DensityNotReached {
            edges: h.m(),
            required,
        });
    }

    let shrunk = shrink_hypergraph(&h, alpha)?;
    let metrics = MetricsReport::of_hypergraph(&shrunk);
    let m = h.m();
    let upper = upper_bounds(k, alpha)?;
    let u_delta_cubic = alpha as f64 * 2f64.powi(width as i32) * (k as f64).powi(3);

    let (formula, shrunk_formula, polarity) = if opts.with_polarity {
        let (f, fs, rep) = polarize_and_shrink(&h, alpha, opts.cap)?;
        (Some(f), Some(fs), Some(rep))
    } else {
        (None, None, None)
    };

    let report = PipelineReport {
        k,
        alpha,
        n,
        m,
        certified_maximal: build.certified_maximal,
        min_edges_bound: min_edges_bound(n, width, alpha)?,
        required_edges: required,
        source_alpha_intersecting: h.check_alpha_intersecting(alpha).is_ok(),
        shrunk_width: shrunk.uniform_width(),
        shrunk_alpha_intersecting: shrunk.check_alpha_intersecting(alpha).is_ok(),
        shrunk: metrics,
        degree_bound: ((m * width) as f64).powf(alpha as f64 / (alpha as f64 + 1.0)),
        degree_bound_ok: degree_within(metrics.delta_vertex, m, width, alpha),
        intersections_ok: metrics.i as u128 <= m as u128 * metrics.delta_clause as u128,
        intersections_vs_vertex_degree: metrics.i as u128
            <= m as u128 * metrics.delta_vertex as u128,
        witness: witness_unchecked(&h, &shrunk, alpha),
        upper: UpperComparison {
            bounds: upper,
            u_delta_cubic,
            n_within_u_n: (n as f64) <= upper.u_n,
            m_within_u_m: (m as f64) <= upper.u_m,
            delta_within_u_delta: (metrics.delta_vertex as f64) <= upper.u_delta,
            delta_within_u_delta_cubic: (metrics.delta_vertex as f64) <= u_delta_cubic,
            i_within_u_i: (metrics.i as f64) <= upper.u_i,
        },
        polarity,
    };
    Ok(PipelineOutput {
        hypergraph: h,
        shrunk,
        formula,
        shrunk_formula,
        report,
    })
}
