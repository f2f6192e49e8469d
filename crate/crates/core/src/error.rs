use thiserror::Error;

use crate::structures::OrderViolation;

/// Errors raised by validation and by the finite searches.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not a partial order: {0}")]
    Order(#[from] OrderViolation),
    #[error("coloring is not semi-transitive: witness ({0}, {1}, {2})")]
    NotSemiTransitive(usize, usize, usize),
    #[error("set is not pseudo-homogeneous: {0:?}")]
    NotPseudoHomogeneous(Vec<usize>),
    #[error("horizon too small: {0}")]
    Horizon(String),
    #[error("malformed opponent script: {0}")]
    Script(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search stalled: {0}")]
    Stall(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
