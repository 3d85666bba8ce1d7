use thiserror::Error;

/// Errors produced by exact computations.
///
/// Numerical oracle routines never fail; they return verdicts instead.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("invalid norm: {0}")]
    InvalidNorm(String),

    #[error("invalid interval: lo {lo} > hi {hi}")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("invalid region: {0}")]
    InvalidRegion(String),

    /// The symbolic engine cannot certify a density or an ideal-membership
    /// answer for this region. Deliberately distinct from `false`.
    #[error("undecidable region: {0}")]
    UndecidableRegion(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("sequence is not I-bounded: {0}")]
    NotIdealBounded(String),

    #[error("operation requires dimension 1, got {0}")]
    DimensionNotOne(usize),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("parse error: {0}")]
    Parse(String),
}
