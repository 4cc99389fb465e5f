//! Bivariate polynomials and rational functions in the independent formal
//! variables xi and xibar.
//!
//! Independence of the two variables is deliberate: every identity in the
//! model is a formal identity, and holding xi, xibar unrelated makes the
//! exact checks strictly stronger than checks on the physical locus
//! xibar = conj(xi). The locus is imposed only by the numeric engine.

mod monomial;
mod polynomial;
mod rational;

pub use monomial::{Monomial, Var};
pub use polynomial::Polynomial;
pub use rational::RationalFunction;

use std::sync::atomic::{AtomicU32, Ordering};
use thiserror::Error;

static DEGREE_CAP: AtomicU32 = AtomicU32::new(512);

/// Current total-degree cap used to detect expression swell.
pub fn degree_cap() -> u32 {
    DEGREE_CAP.load(Ordering::Relaxed)
}

/// Overrides the degree cap (default 512).
pub fn set_degree_cap(cap: u32) {
    DEGREE_CAP.store(cap, Ordering::Relaxed);
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolicError {
    #[error("degree cap exceeded: total degree {degree} > {cap}")]
    DegreeOverflow { degree: u32, cap: u32 },
    #[error("division by the zero polynomial")]
    DivisionByZero,
}
