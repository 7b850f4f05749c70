use thiserror::Error;

use crate::rational::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rational literal: {0:?}")]
    InvalidRational(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid kernel: {0}")]
    InvalidKernel(String),

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("pattern has {0} nodes, cap is {1}")]
    NodeCapExceeded(usize, usize),

    #[error("brute-force guard exceeded: {0} assignments, guard {1}")]
    BruteGuardExceeded(u128, u128),

    #[error("elimination width {width} exceeds cap {cap} and brute-force fallback failed: {fallback}")]
    WidthExceeded {
        width: usize,
        cap: usize,
        fallback: String,
    },

    #[error("tensor power would need {0} parts, guard {1}")]
    PartGuardExceeded(u128, usize),

    #[error("product would have {0} nodes, guard {1}")]
    ProductGuardExceeded(u128, usize),

    #[error("pattern has {0} edges; spectrum enumeration cap is {1}")]
    SpectrumCapExceeded(usize, usize),

    #[error("kernel is not a graphon (value {0} outside [0,1])")]
    NotGraphon(Rational),

    #[error("kernel is not balanced (part {0} has weighted degree {1})")]
    NotBalanced(usize, Rational),

    #[error("delta must lie in (0,1], got {0}")]
    DeltaOutOfRange(Rational),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search exhausted: {reason}{}", best_value.as_ref().map(|v| format!("; best value found {v}")).unwrap_or_default())]
    SearchExhausted {
        reason: String,
        best_value: Option<Rational>,
    },

    #[error("generator retry limit reached after {0} attempts")]
    RetryLimit(usize),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
