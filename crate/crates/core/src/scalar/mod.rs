//! Exact arithmetic in Q(i)(sqrt(d_1), sqrt(d_2), ...).
//!
//! [`GaussianRational`] is a + b i with arbitrary-precision rational a, b.
//! [`RadicalScalar`] is a finite Q(i)-linear combination of square roots of
//! distinct squarefree positive integers, kept in a unique canonical form so
//! that structural equality coincides with value equality.

mod gaussian;
mod radical;

pub use gaussian::GaussianRational;
pub use radical::{
    radicand_limit, rational_content, set_radicand_limit, RadicalScalar, DEFAULT_FACTOR_BOUND,
    DEFAULT_RADICAND_LIMIT,
};

use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

/// Errors raised by the exact-scalar layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    /// The radicand set left the supported field tower (too many distinct
    /// radicands, or a radicand whose squarefree part cannot be certified
    /// within the factorization bound).
    #[error("radicand bound exceeded: {0}")]
    RadicandOverflow(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative value")]
    NegativeRadicand,
}

/// Entry-wise involution used by Hermitian conjugation.
///
/// For plain scalars this is complex conjugation; for polynomials and
/// rational functions it is the sigma involution (swap xi and xibar, then
/// conjugate every coefficient), which is what makes `dagger` on matrices of
/// rational functions the physically meaningful adjoint.
pub trait Conjugate {
    fn conjugate(&self) -> Self;
}

/// Commutative ring with the involution; the entry type of dense matrices.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
    + Conjugate
{
    /// Embedding of small integers, used by derivative and binomial factors.
    fn from_integer(n: i64) -> Self;
}

/// Field scalar: a ring whose nonzero elements are invertible.
pub trait Scalar: Ring {
    /// Multiplicative inverse; `None` for zero.
    fn try_inverse(&self) -> Option<Self>;
}

impl Conjugate for num_complex::Complex64 {
    fn conjugate(&self) -> Self {
        self.conj()
    }
}

impl Ring for num_complex::Complex64 {
    fn from_integer(n: i64) -> Self {
        num_complex::Complex64::new(n as f64, 0.0)
    }
}

impl Scalar for num_complex::Complex64 {
    fn try_inverse(&self) -> Option<Self> {
        if self.norm_sqr() == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
}
