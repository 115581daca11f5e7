use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("invalid witness: max |f(xi)| = {residual:.3e} exceeds {tolerance:.3e}")]
    InvalidWitness { residual: f64, tolerance: f64 },

    #[error("parameters outside the supported range: {0}")]
    UnsupportedRange(String),

    #[error("grid of {values} values exceeds the cap of {cap}; lower the oversampling or the degree")]
    GridTooLarge { values: usize, cap: usize },

    #[error("solver failure: {0}")]
    Solver(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
