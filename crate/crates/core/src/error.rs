use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: u64, n: usize },
    #[error("vertex {0} appears twice in one edge")]
    DuplicateVertex(u32),
    #[error("variable {0} appears twice in one clause")]
    DuplicateVariable(u32),
    #[error("expected a {expected}-uniform input, found an edge of size {found}")]
    NotUniform { expected: usize, found: usize },
    #[error("index {index} out of range ({len} edges)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("edges {0} and {1} share {2} vertices, more than alpha = {3}")]
    NotAlphaIntersecting(usize, usize, usize, usize),
    #[error("n = {n} exceeds the coverage cap of {cap}")]
    OverCap { n: usize, cap: u32 },
    #[error("assignment has length {found}, formula has {expected} variables")]
    LengthMismatch { expected: usize, found: usize },
    #[error(
        "enumeration of {candidates} candidates exceeds the budget of {budget}; use sampling mode"
    )]
    EnumerationBudget { candidates: u128, budget: u64 },
    #[error("target of {target} edges unreachable: stopped at {reached}")]
    TargetUnreachable { target: usize, reached: usize },
    #[error("density not reached: {edges} edges < required {required}")]
    DensityNotReached { edges: usize, required: u128 },
    #[error("integer overflow evaluating {0}")]
    Overflow(&'static str),
    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),
    #[error("resampling failed after {0} resamples although the degree condition holds")]
    SolverAnomaly(u64),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
