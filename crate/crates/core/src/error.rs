use thiserror::Error;

use crate::report::CompatibilityReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("value {0} is outside the unit interval [0,1]")]
    OutOfUnitInterval(f64),

    #[error("value is not a finite number")]
    NotFinite,

    #[error("components must be nondecreasing: position {position} holds {value} after {previous}")]
    NotSorted {
        position: usize,
        previous: f64,
        value: f64,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("arity mismatch: expected {expected} arguments, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("empty input where at least one element is required")]
    Empty,

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("not a permutation of 1..={len}: {detail}")]
    InvalidPermutation { len: usize, detail: String },

    #[error("weights must sum to 1 (within 1e-9), got {sum}")]
    WeightSum { sum: f64 },

    #[error("weight at position {position} is negative: {value}")]
    NegativeWeight { position: usize, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("aggregation contract violated: {0}")]
    Contract(String),

    #[error("component aggregations are not ordered by dominance ({})", .0.axiom)]
    DominanceViolation(Box<CompatibilityReport>),

    #[error("order is not compatible with the semi-vector space ({} fails)", .0.axiom)]
    IncompatibleOrder(Box<CompatibilityReport>),

    #[error("validation failed at {path}: {message}")]
    Validation { path: String, message: String },
}

impl Error {
    pub fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            path: path.into(),
            message: message.into(),
        }
    }
}
