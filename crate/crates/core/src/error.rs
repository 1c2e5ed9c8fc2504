use thiserror::Error;

/// Errors raised by projection, iteration and oracle routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProjError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector must have at least one coordinate")]
    EmptyVector,

    #[error("coordinate {index} is not finite")]
    NonFinite { index: usize },

    #[error("Gram matrix is singular (generators are linearly dependent)")]
    SingularGram,

    #[error("empty intersection")]
    EmptySet,

    #[error("normals are linearly dependent")]
    DependentNormals,

    #[error("normal vector is zero")]
    ZeroNormal,

    #[error("too many inequality constraints: {count} (limit {limit})")]
    TooManyConstraints { count: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, ProjError>;
