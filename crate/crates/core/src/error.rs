use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed input: bad shapes, non-positive dimensions, non-normalized
    /// probability vectors, non-unitary matrices.
    #[error("validation error: {0}")]
    Validation(String),

    /// The functional fails positivity or normalization.
    #[error("not a state: {0}")]
    NotAState(String),

    /// Block-structure discovery could not certify its result.
    #[error("decomposition failed: {reason} (residual {residual:e})")]
    Decomposition { reason: String, residual: f64 },

    /// Pure states in different sectors cannot be connected.
    #[error("disconnected sectors: block {from} and block {to}")]
    DisconnectedSectors { from: usize, to: usize },

    /// Numerical routine failed where exact arithmetic cannot.
    #[error("internal numerical error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn not_a_state(msg: impl Into<String>) -> Self {
        Error::NotAState(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
