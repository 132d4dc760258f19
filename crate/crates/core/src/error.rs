use thiserror::Error;

/// Errors reported by validation and analysis operations.
///
/// Index fields are zero-based; rendered messages use one-based positions to
/// match report output.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("entry ({}, {}) must be positive", i + 1, j + 1)]
    NonPositiveEntry { i: usize, j: usize },

    #[error("coordinate {} must be positive", i + 1)]
    NonPositiveCoordinate { i: usize },

    #[error("diagonal entry ({}, {}) must equal 1", i + 1, i + 1)]
    DiagonalNotOne { i: usize },

    #[error("entries ({}, {}) and ({}, {}) are not reciprocal", i + 1, j + 1, j + 1, i + 1)]
    ReciprocityViolation { i: usize, j: usize },

    #[error("dimension must be at least {min}, got {n}")]
    DimensionTooSmall { n: usize, min: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension {n} exceeds the cycle enumeration cap {cap}")]
    DimensionExceedsCap { n: usize, cap: usize },

    #[error("indices must be distinct")]
    IndicesEqual,

    #[error("index {} out of range for dimension {n}", index + 1)]
    IndexOutOfRange { index: usize, n: usize },

    #[error("sequence is not a full cycle over all indices")]
    MalformedCycle,

    #[error("map is not a permutation of the index set")]
    NotAPermutation,

    #[error("cycle product is not below one for this matrix")]
    CycleNotInGamma,

    #[error("matrix is consistent")]
    ConsistentMatrix,

    #[error("coefficients must not all be zero")]
    AllZeroCoefficients,

    #[error("coefficient at position {} is negative", i + 1)]
    NegativeCoefficient { i: usize },

    #[error("invalid rational literal {text:?}")]
    InvalidRational { text: String },
}

impl Error {
    pub(crate) fn dim_mismatch(left: usize, right: usize) -> Self {
        Error::DimensionMismatch { left, right }
    }
}
