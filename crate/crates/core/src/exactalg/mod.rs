//! Exact scalars and linear algebra over Q and Q(λ).
//!
//! Everything here is exact. Row reduction always picks the leftmost
//! nonzero column and the topmost unreduced row as pivot, so reduced
//! bases, and therefore [`Subspace`] equality, are representational.

mod matrix;
pub mod modular;
mod poly;
mod scalar;
mod sparse;
mod subspace;

pub use matrix::{DynMatrix, Matrix, Rref};
pub use poly::{Poly, RatFunc};
pub use scalar::{is_unit, parse_rational, rat, ratio, Field, Rational, Scalar, ScalarKind};
pub use sparse::{Certificate, SparseEchelon};
pub use subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("scalar kind mismatch")]
    ScalarKindMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    Singular,
}
