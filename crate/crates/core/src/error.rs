use thiserror::Error;

/// Errors surfaced by space construction and the fallible operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("non-finite entry in input")]
    NonFinite,

    #[error("inner product is not defined on this space")]
    UnsupportedSpace,

    #[error("element is not in the positive cone")]
    NotPositive,

    #[error("elements are not orthogonal")]
    NotOrthogonal,

    #[error("zero element is not allowed here")]
    ZeroElement,

    #[error("element is not an order projection")]
    NotOrderProjection,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid algebra frame: {0}")]
    InvalidFrame(String),

    #[error("zero-product classification is inconsistent: {0}")]
    InconsistentZeroProduct(String),
}
