//! Beta-shrinking: delete the `beta` highest-degree vertices from every edge.
//!
//! Degrees are taken once on the input (static). Among equal degrees the
//! lowest vertex id is deleted first. Edge order and `n` are preserved;
//! distinct source edges may shrink to the same edge, and both are kept.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{CnfFormula, Hypergraph};

/// Per-edge list of deleted vertices (sorted), for a uniform input of width `> beta`.
pub fn deleted_vertices(h: &Hypergraph, beta: usize) -> Result<Vec<Vec<u32>>> {
    if let Some(width) = h.width_checked()? {
        if beta >= width {
            return Err(Error::InvalidParams(format!(
                "cannot shrink width {width} by beta = {beta}"
            )));
        }
    }
    let deg = h.vertex_degrees();
    Ok(h.edges()
        .iter()
        .map(|e| {
            let mut ranked = e.clone();
            ranked.sort_by_key(|&v| (std::cmp::Reverse(deg[v as usize]), v));
            ranked.truncate(beta);
            ranked.sort_unstable();
            ranked
        })
        .collect())
}

pub fn shrink_hypergraph(h: &Hypergraph, beta: usize) -> Result<Hypergraph> {
    let deleted = deleted_vertices(h, beta)?;
    let edges = h
        .edges()
        .iter()
        .zip(&deleted)
        .map(|(e, d)| {
            e.iter()
                .copied()
                .filter(|v| d.binary_search(v).is_err())
                .collect()
        })
        .collect();
    Ok(Hypergraph::from_sorted_unchecked(h.n(), edges))
}

/// Shrinks clauses with the vertex choice made on the induced hypergraph.
pub fn shrink_formula(f: &CnfFormula, beta: usize) -> Result<CnfFormula> {
    let deleted = deleted_vertices(&f.induced_hypergraph(), beta)?;
    let clauses = f
        .clauses()
        .iter()
        .zip(&deleted)
        .map(|(c, d)| c.without_vars(d))
        .collect();
    CnfFormula::new(f.n(), clauses)
}

/// Maximum degree left after shrinking and how many source vertices reach it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShrinkingWitness {
    pub alpha: usize,
    /// Maximum vertex degree of the shrunk hypergraph.
    pub d_max: usize,
    /// Vertices of the source hypergraph with degree at least `d_max`.
    pub count: usize,
}

impl ShrinkingWitness {
    /// `count > d_max^(1/alpha)`, decided exactly as `count^alpha > d_max`.
    /// Vacuous when nothing survives.
    pub fn holds(&self) -> bool {
        if self.d_max == 0 {
            return true;
        }
        let mut pow: u128 = 1;
        for _ in 0..self.alpha {
            pow = pow.saturating_mul(self.count as u128);
        }
        pow > self.d_max as u128
    }
}

/// Checks that `shrunk` is the alpha-shrink of `h` and reports the high-degree count.
pub fn shrinking_witness(
    h: &Hypergraph,
    shrunk: &Hypergraph,
    alpha: usize,
) -> Result<ShrinkingWitness> {
    let expected = shrink_hypergraph(h, alpha)?;
    if &expected != shrunk {
        return Err(Error::Inconsistent(
            "second hypergraph is not the alpha-shrink of the first".into(),
        ));
    }
    Ok(witness_unchecked(h, shrunk, alpha))
}

pub(crate) fn witness_unchecked(
    h: &Hypergraph,
    shrunk: &Hypergraph,
    alpha: usize,
) -> ShrinkingWitness {
    let d_max = shrunk.max_vertex_degree();
    let count = h
        .vertex_degrees()
        .into_iter()
        .filter(|&d| d >= d_max)
        .count();
    ShrinkingWitness {
        alpha,
        d_max,
        count,
    }
}
