//! Satisfiability threshold brackets for alpha-intersecting k-CNFs.
//!
//! Below any lower bound (`l_i`, `l_n`, `l_m`) a formula is satisfiable via
//! shrinking plus the local lemma. The upper bounds describe the
//! unsatisfiable construction. Both families are evaluated in `f64` with no
//! rounding; for small `k` they can be vacuous or cross each other.

use std::f64::consts::E;

use serde::Serialize;

use crate::error::Result;
use crate::model::{MetricsReport, Params};

/// `2^(k - alpha) / (e k)`, the vertex-degree cutoff after alpha-shrinking.
pub fn degree_cutoff(k: usize, alpha: usize) -> f64 {
    2f64.powi(k as i32 - alpha as i32) / (E * k as f64)
}

/// `x^p` with the sign of `x` carried through, so a negative base stays negative.
fn signed_pow(x: f64, p: f64) -> f64 {
    x.signum() * x.abs().powf(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerBounds {
    pub d: f64,
    pub l_i: f64,
    pub l_n: f64,
    pub l_m: f64,
    /// `d <= 1`: the intersection bound is non-positive and the others are below one.
    pub degenerate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UpperBounds {
    pub u_i: f64,
    pub u_n: f64,
    pub u_m: f64,
    pub u_delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdBounds {
    pub k: usize,
    pub alpha: usize,
    pub lower: LowerBounds,
    pub upper: UpperBounds,
}

impl ThresholdBounds {
    pub fn new(k: usize, alpha: usize) -> Result<Self> {
        Ok(ThresholdBounds {
            k,
            alpha,
            lower: lower_bounds(k, alpha)?,
            upper: upper_bounds(k, alpha)?,
        })
    }
}

pub fn lower_bounds(k: usize, alpha: usize) -> Result<LowerBounds> {
    Params::strict(k, alpha)?;
    let d = degree_cutoff(k, alpha);
    let inv = 1.0 / alpha as f64;
    Ok(LowerBounds {
        d,
        l_i: signed_pow(d - 1.0, 2.0 + inv) / (2.0 * alpha as f64),
        l_n: d.powf(inv),
        l_m: d.powf(1.0 + inv) / k as f64,
        degenerate: d <= 1.0,
    })
}

pub fn upper_bounds(k: usize, alpha: usize) -> Result<UpperBounds> {
    Params::strict(k, alpha)?;
    let (kf, a) = (k as f64, alpha as f64);
    let inv = 1.0 / a;
    let ka = (k + alpha) as f64;
    Ok(UpperBounds {
        u_i: a * a * 2f64.powf(ka * (2.0 + inv)) * kf.powf(5.0 + 2.0 * inv),
        u_n: 2.0 * a * 2f64.powf(kf * inv) * kf.powf(2.0 * (1.0 + inv)),
        u_m: a * 2f64.powf(ka * (1.0 + inv)) * kf.powf(2.0 * (1.0 + inv)),
        u_delta: a * 2f64.powf(ka) * kf * kf,
    })
}

/// Quantity whose smallness certifies satisfiability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Guarantee {
    Variables,
    Clauses,
    Intersections,
}

impl Guarantee {
    pub fn name(self) -> &'static str {
        match self {
            Guarantee::Variables => "variables",
            Guarantee::Clauses => "clauses",
            Guarantee::Intersections => "intersections",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GuaranteeCheck {
    /// Empty means no guarantee, not unsatisfiability.
    pub guaranteed_by: Vec<Guarantee>,
    pub bounds: LowerBounds,
}

/// Strict comparisons `n < l_n`, `m < l_m`, `i < l_i` for an alpha-intersecting width-k formula.
pub fn guarantee_check(report: &MetricsReport, k: usize, alpha: usize) -> Result<GuaranteeCheck> {
    let bounds = lower_bounds(k, alpha)?;
    let mut guaranteed_by = Vec::new();
    if (report.n as f64) < bounds.l_n {
        guaranteed_by.push(Guarantee::Variables);
    }
    if (report.m as f64) < bounds.l_m {
        guaranteed_by.push(Guarantee::Clauses);
    }
    if (report.i as f64) < bounds.l_i {
        guaranteed_by.push(Guarantee::Intersections);
    }
    Ok(GuaranteeCheck {
        guaranteed_by,
        bounds,
    })
}
