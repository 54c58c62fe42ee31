use thiserror::Error;

use crate::graph::VertexSubset;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("input error: {0}")]
    Input(String),

    /// The requested computation exceeds a fixed size cap.
    #[error("capacity error: {what} is {got}, limit is {limit}")]
    Capacity {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    /// A dual certificate failed its feasibility check on some subset.
    #[error("certificate infeasible on subset {violating:?}: lhs {lhs} vs gamma weight {rhs}")]
    Certificate {
        violating: VertexSubset,
        lhs: f64,
        rhs: f64,
    },

    /// Something that cannot happen for a correct implementation did happen.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capacity { .. } => 2,
            Error::InvariantViolation(_) => 3,
            _ => 1,
        }
    }
}
