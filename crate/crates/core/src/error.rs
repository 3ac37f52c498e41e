//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value violates a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Matrix or vector dimensions do not match what the operation requires.
    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    /// A matrix that must be Hermitian deviates from its adjoint.
    #[error("matrix is not Hermitian: max |M - M^H| entry is {deviation:.3e} (tolerance {tolerance:.1e})")]
    NotHermitian { deviation: f64, tolerance: f64 },

    /// A matrix that must be positive semidefinite has a clearly negative eigenvalue.
    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    /// A density matrix whose trace is not 1 within tolerance.
    #[error("trace must be 1: got {trace}")]
    TraceNotOne { trace: f64 },

    /// Entries that must be finite contain NaN or infinity.
    #[error("non-finite entry at {location}")]
    NonFinite { location: String },

    /// The operation is well-formed but outside what this crate supports.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A structured input file failed validation; `path` locates the offending node.
    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    /// An internal invariant failed; indicates a bug or a pathological sample.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
