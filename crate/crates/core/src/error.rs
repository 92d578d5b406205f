use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },

    #[error("{points} points but {values} values")]
    LengthMismatch { points: usize, values: usize },

    #[error("malformed linear program: {0}")]
    MalformedProblem(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("approximation error {error} below tolerance {tolerance}; extremal signs undefined")]
    ErrorBelowTolerance { error: f64, tolerance: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("witness inconsistent: no descent found within {halvings} step halvings")]
    WitnessInconsistent { halvings: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
