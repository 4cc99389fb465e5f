//! Exact verification engine for CP^{2s} sigma-model solution chains and the
//! su(2) spin matrices built from them.
//!
//! The crate is layered:
//!
//! * [`scalar`] — the exact coefficient field Q(i)(sqrt(d_1), sqrt(d_2), ...):
//!   arbitrary-precision rationals, Gaussian rationals and finite combinations
//!   of square roots of squarefree integers.
//! * [`poly`] — bivariate polynomials and rational functions in the
//!   independent formal variables xi and xibar, with Wirtinger derivatives.
//! * [`linalg`] — dense vectors and matrices over any [`scalar::Ring`],
//!   Hermitian conjugation, and a common-denominator quotient form used by
//!   the heavier exact computations.
//! * [`sigma`] — the CP^{N-1} solution chain: raising operators, rank-1
//!   projectors, Euler-Lagrange residuals, immersion functions and the spin
//!   matrix S^z with its algebraic properties.
//! * [`veronese`] — the Veronese/Krawtchouk layer: closed-form chain vectors,
//!   generalized Pauli matrices, the S^z = alpha . sigma decomposition,
//!   ladder actions and algebraic recurrences.
//! * [`heisenberg`] — the alpha-field dynamics: stationarity equations,
//!   unitary-congruence tests and the lattice Heisenberg model with its
//!   continuum limit.
//! * [`numeric`] — floating-point evaluation, sampling and finite
//!   differences; the independent cross-check for every exact identity.
//!
//! The symbolic tower is generic over the coefficient scalar (any type
//! implementing [`scalar::Scalar`]); the aliases below fix the concrete
//! instantiation used throughout the project.

pub mod heisenberg;
pub mod linalg;
pub mod numeric;
pub mod poly;
pub mod scalar;
pub mod sigma;
pub mod veronese;

pub use scalar::{Conjugate, GaussianRational, RadicalScalar, Ring, Scalar};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// Double-precision complex number, used by the numeric engine only.
pub type C64 = num_complex::Complex64;

/// Bivariate polynomial in (xi, xibar) over the exact coefficient field.
pub type Poly = poly::Polynomial<RadicalScalar>;
/// Ratio of two such polynomials; the entry type of all model matrices.
pub type Rf = poly::RationalFunction<RadicalScalar>;
/// Dense vector of rational functions.
pub type VectorRf = linalg::Vector<Rf>;
/// Dense matrix of rational functions.
pub type MatrixRf = linalg::Matrix<Rf>;
/// Matrix of polynomials over a single polynomial denominator.
pub type QuotMatrixRs = linalg::QuotMatrix<RadicalScalar>;
