use thiserror::Error;

use crate::matrix::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Error type shared by all modules of this crate.
///
/// Numeric payloads are carried as `f64` regardless of the scalar type the
/// operation ran with; they are diagnostic only.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("order {n} too small: {context} requires n >= {min}")]
    OrderTooSmall {
        n: usize,
        min: usize,
        context: &'static str,
    },

    #[error("entry ({row},{col}) must be positive and finite, got {value}")]
    NonPositiveEntry { row: usize, col: usize, value: f64 },

    #[error("order {n} needs {expected} upper-triangle entries, got {got}")]
    WrongEntryCount {
        n: usize,
        expected: usize,
        got: usize,
    },

    #[error("weight {index} must be positive and finite, got {value}")]
    NonPositiveWeight { index: usize, value: f64 },

    #[error("matrix failed validation:\n{0}")]
    Invalid(ValidationReport),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("permutation is not a bijection of 0..{n}: {detail}")]
    NotAPermutation { n: usize, detail: String },

    #[error("exponent must be positive, got {0}")]
    NonPositiveExponent(f64),

    #[error("operation requires a consistent matrix")]
    NotConsistent,

    #[error("entry ({row},{col}) equals 1 and cannot be perturbed")]
    UnitEntry { row: usize, col: usize },

    #[error("cannot perturb a diagonal entry ({0},{0})")]
    DiagonalPerturbation(usize),

    #[error(
        "power iteration did not converge after {iterations} iterations \
         (last residual {residual:e})"
    )]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("no random index (R.I.) entry for order {n}")]
    MissingRandomIndex { n: usize },

    #[error("random index for order {n} is zero but C.I. = {ci}")]
    ZeroRandomIndex { n: usize, ci: f64 },

    #[error("compromise weight must lie in [0, 1], got {0}")]
    LambdaOutOfRange(f64),

    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("invalid sampling scale: {0}")]
    InvalidScale(String),

    #[error("{context} requires at least {min}, got {got}")]
    TooFew {
        context: &'static str,
        min: usize,
        got: usize,
    },

    #[error("unknown index name '{0}'")]
    UnknownIndex(String),

    #[error("{skipped} of {samples} sampled matrices failed to converge (limit {limit})")]
    TooManySkipped {
        skipped: usize,
        samples: usize,
        limit: usize,
    },
}
