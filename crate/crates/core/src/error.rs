use thiserror::Error;

/// Errors raised by the polydisc library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension {0} outside the supported range 1..={max}", max = crate::MAX_DIM)]
    Dimension(usize),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("multi-index {index:?} exceeds degree bounds {degree:?}")]
    IndexOutOfBounds { index: Vec<usize>, degree: Vec<usize> },

    #[error("non-finite coefficient at {0:?}")]
    NonFinite(Vec<usize>),

    #[error("point outside the open polydisc: coordinate {coord} has modulus {modulus}")]
    OutsidePolydisc { coord: usize, modulus: f64 },

    #[error(
        "torus grid too coarse on axis {axis}: {size} points for degree {degree} violates the aliasing guard M >= 2N+1"
    )]
    Aliasing { axis: usize, size: usize, degree: usize },

    #[error("tensor with {0} entries exceeds the storage limit")]
    TooLarge(usize),

    #[error("kernel truncation: degree {given} leaves a tail above {tol:e}; about {required} terms per variable are required")]
    TruncationTooShort { given: usize, required: usize, tol: f64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("invalid hypothesis: {}", .0.join("; "))]
    Hypothesis(Vec<String>),

    #[error("fit needs at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("fit samples must be positive and finite: radius {radius} has value {value}")]
    NonPositiveSample { radius: f64, value: f64 },

    #[error("coefficient file, line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
}

pub type Result<T> = std::result::Result<T, Error>;
