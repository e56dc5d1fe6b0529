use thiserror::Error;

/// Errors produced by state validation, subspace search and protocol
/// synthesis. Each validation failure is a distinct variant so callers
/// (and the CLI exit-status mapping) can tell them apart.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix entry ({row},{col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("matrix is not Hermitian: max |M - M†| = {deviation:.3e} exceeds {tol:.3e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("dimension mismatch: matrix is {rows}x{cols} but dim_a*dim_b = {expected}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
    },

    #[error("trace is {trace:.12} (expected 1 within {tol:.3e})")]
    TraceNotOne { trace: f64, tol: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("local dimensions must be at least 1 (got {dim_a}x{dim_b})")]
    EmptyLocalDimension { dim_a: usize, dim_b: usize },

    #[error("zero vector cannot be decomposed")]
    ZeroVector,

    #[error("vector length {len} does not factor as {dim_a}*{dim_b}")]
    VectorLengthMismatch {
        len: usize,
        dim_a: usize,
        dim_b: usize,
    },

    #[error("state is not entangled (Schmidt number 1)")]
    NotEntangled,

    #[error("subspace index sets must have equal size (got {size_a} and {size_b})")]
    SubsetSizeMismatch { size_a: usize, size_b: usize },

    #[error("invalid product subspace: {reason}")]
    InvalidSubspace { reason: String },

    #[error("tensor power would need {required} rows, above the cap of {cap}")]
    DimensionCapExceeded { required: usize, cap: usize },

    #[error("search would enumerate {required} subset pairs, above the budget of {budget}")]
    EnumerationBudgetExceeded { required: u128, budget: u128 },

    #[error("operation requires a 2x2-by-2x2 state (got {dim_a}x{dim_b})")]
    NotTwoQubit { dim_a: usize, dim_b: usize },

    #[error("quasi-separability test requires an inseparable state")]
    SeparableInput,

    #[error("input vectors are not orthonormal (deviation {deviation:.3e})")]
    NotOrthonormal { deviation: f64 },

    #[error("projector partitions overlap or do not cover the local basis: {reason}")]
    InvalidPartition { reason: String },

    #[error("zero-pattern check failed, the subspace record is inconsistent: {reason}")]
    InconsistentRecord { reason: String },

    #[error("state file: {reason}")]
    StateFile { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
