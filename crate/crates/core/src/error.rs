use thiserror::Error;

use crate::scalar::Field;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("field mismatch: operation needs {expected} components, got {found}")]
    FieldMismatch { expected: &'static str, found: &'static str },

    #[error("deviator is not traceless (largest trace {0:e})")]
    NotTraceless(f64),

    #[error("matrix is not orthogonal (largest deviation of QᵀQ from I is {0:e})")]
    NotOrthogonal(f64),

    #[error("point is not feasible: {0}")]
    Infeasible(String),

    #[error("no convergence: {0}")]
    NoConvergence(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn field_mismatch(expected: Field, found: Field) -> Self {
        Error::FieldMismatch { expected: expected.as_str(), found: found.as_str() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
