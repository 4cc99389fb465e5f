//! Dense vectors and matrices over any [`crate::scalar::Ring`], plus the
//! common-denominator quotient form used by the heavier exact computations.

mod matrix;
mod quot;

pub use matrix::{Matrix, Vector};
pub use quot::QuotMatrix;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {left} vs {right} in {op}")]
    DimensionMismatch {
        op: &'static str,
        left: String,
        right: String,
    },
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
}
