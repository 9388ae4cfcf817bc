//! Exact linear algebra over prime fields and the rationals.

pub mod field;
pub mod matrix;
pub mod subspace;

pub use field::{Field, Scalar};
pub use matrix::{dense_threshold, set_dense_threshold, sparse_add_scaled, Echelon, Matrix, Rref, SparseVec};
pub use subspace::{QuotientBasis, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    Shape(String),
}
