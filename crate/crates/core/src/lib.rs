//! Satisfiability thresholds for alpha-intersecting k-CNF formulas.
//!
//! A k-CNF is alpha-intersecting when any two clauses share at most
//! `alpha` variables. This crate provides the constructive pieces around
//! such formulas:
//!
//! - [`shrink`]: delete the highest-degree variables from every clause.
//! - [`lll`]: shrink, then solve with Moser-Tardos resampling.
//! - [`maximal`]: greedy maximal alpha-intersecting hypergraphs.
//! - [`unsat`]: greedy polarities that make a dense hypergraph unsatisfiable.
//! - [`pipeline`]: the full unsatisfiable construction with its structural checks.
//! - [`thresholds`]: lower and upper threshold formulas.
//! - [`oracle`]: brute-force satisfiability and model counting.
//! - [`io`]: DIMACS CNF and `p hyg` hypergraph files.

pub mod binom;
pub mod config;
pub mod error;
pub mod io;
pub mod lll;
pub mod maximal;
pub mod model;
pub mod oracle;
pub mod pipeline;
pub mod shrink;
pub mod thresholds;
pub mod unsat;

pub use config::CoverageCap;
pub use error::{Error, Result};
pub use model::{
    complete_formula, AlphaCheck, Assignment, Clause, CnfFormula, Hypergraph, Lit, MetricsReport,
    Params,
};
