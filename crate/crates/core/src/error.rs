use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(&'static str, &'static str),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
