//! The Veronese/Krawtchouk layer: closed-form chain vectors, generalized
//! Pauli matrices, the S^z = alpha . sigma decomposition with the
//! tridiagonality criterion, ladder actions on the chain, algebraic
//! recurrences and the spherical-coordinate field.

use crate::linalg::{LinalgError, Matrix, Vector};
use crate::numeric::{self, NumericError, PointSampler, SampleMode};
use crate::poly::{SymbolicError, Var};
use crate::scalar::{Ring, Scalar, ScalarError};
use crate::sigma::SigmaModel;
use crate::{MatrixRf, QuotMatrixRs, RadicalScalar, Rational, Rf, VectorRf, C64};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use std::ops::Neg;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum VeroneseError {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("degenerate algebraic recurrence at step {step}: {reason}")]
    DegenerateChain { step: usize, reason: String },
    #[error("spin matrix does not decompose over the Pauli basis")]
    NoDecomposition,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

pub(crate) fn binomial(n: u32, k: u32) -> Result<u64, VeroneseError> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    u64::try_from(acc).map_err(|_| {
        VeroneseError::ParameterOutOfRange(format!("binomial({n}, {k}) exceeds u64"))
    })
}

fn xi_rf() -> Rf {
    Rf::variable(Var::Xi)
}

fn xibar_rf() -> Rf {
    Rf::variable(Var::XiBar)
}

fn opx_rf() -> Rf {
    &Rf::one() + &(&xi_rf() * &xibar_rf())
}

fn rf_pow(base: &Rf, e: u32) -> Rf {
    let mut acc = Rf::one();
    for _ in 0..e {
        acc = &acc * base;
    }
    acc
}

/// The holomorphic Veronese seed: components binom(2s, r)^{1/2} xi^r.
pub fn veronese_seed(two_s: u32) -> Result<VectorRf, VeroneseError> {
    if two_s == 0 {
        return Err(VeroneseError::ParameterOutOfRange("2s must be >= 1".into()));
    }
    let mut entries = Vec::with_capacity(two_s as usize + 1);
    for r in 0..=two_s {
        let coeff = RadicalScalar::sqrt_integer(binomial(two_s, r)?)?;
        entries.push(&Rf::from_scalar(coeff) * &rf_pow(&xi_rf(), r));
    }
    Ok(Vector::new(entries))
}

/// Terminating hypergeometric sum for the Krawtchouk polynomial
/// K_j(k; p, 2s) = 2F1(-j, -k; -2s; 1/p), evaluated in any field scalar.
fn krawtchouk_in<K: Scalar>(j: u32, k: u32, two_s: u32, p: &K) -> Result<K, VeroneseError> {
    if j > two_s || k > two_s {
        return Err(VeroneseError::ParameterOutOfRange(format!(
            "indices ({j}, {k}) exceed 2s = {two_s}"
        )));
    }
    let p_inv = p
        .try_inverse()
        .ok_or_else(|| VeroneseError::ParameterOutOfRange("p must be nonzero".into()))?;
    let mut acc = K::one();
    let mut term = K::one();
    for m in 0..j.min(k) {
        let m = m as i64;
        let numer = K::from_integer((m - j as i64) * (m - k as i64));
        let denom = K::from_integer((m - two_s as i64) * (m + 1));
        let denom_inv = denom
            .try_inverse()
            .expect("Pochhammer denominator nonzero while m < 2s");
        term = term * numer * denom_inv * p_inv.clone();
        acc = acc + term.clone();
    }
    Ok(acc)
}

/// K_j(k) as a rational function of a symbolic p.
pub fn krawtchouk_rf(j: u32, k: u32, two_s: u32, p: &Rf) -> Result<Rf, VeroneseError> {
    krawtchouk_in(j, k, two_s, p)
}

/// K_j(k) at an exact rational p.
pub fn krawtchouk_rational(
    j: u32,
    k: u32,
    two_s: u32,
    p: &Rational,
) -> Result<Rational, VeroneseError> {
    let value = krawtchouk_in(j, k, two_s, &RadicalScalar::from_rational(p.clone()))?;
    Ok(value
        .as_rational()
        .expect("rational inputs give rational Krawtchouk values"))
}

/// Krawtchouk evaluations against a fixed degree bound and parameter.
#[derive(Debug, Clone)]
pub struct KrawtchoukEvaluator {
    two_s: u32,
    p: Rf,
}

impl KrawtchoukEvaluator {
    /// Evaluator at the chain parameter p = xi xibar / (1 + xi xibar).
    pub fn chain(two_s: u32) -> Self {
        let p = &(&xi_rf() * &xibar_rf()) / &opx_rf();
        Self { two_s, p }
    }

    pub fn with_parameter(two_s: u32, p: Rf) -> Self {
        Self { two_s, p }
    }

    pub fn parameter(&self) -> &Rf {
        &self.p
    }

    pub fn degree_bound(&self) -> u32 {
        self.two_s
    }

    pub fn evaluate(&self, j: u32, k: u32) -> Result<Rf, VeroneseError> {
        krawtchouk_rf(j, k, self.two_s, &self.p)
    }
}

/// Residual of the lattice orthogonality identity
/// sum_j binom(2s, j) p^j (1-p)^{2s-j} K_j(k) K_j(k'), with p a formal
/// variable; exactly zero for k != k'.
pub fn krawtchouk_orthogonality_residual(
    two_s: u32,
    k: u32,
    kp: u32,
) -> Result<Rf, VeroneseError> {
    let p = xi_rf();
    let one_minus_p = &Rf::one() - &p;
    let mut sum = Rf::zero();
    for j in 0..=two_s {
        let weight = Rf::from_scalar(RadicalScalar::from_integer(binomial(two_s, j)? as i64));
        let term = &(&weight * &rf_pow(&p, j)) * &rf_pow(&one_minus_p, two_s - j);
        let term = &term * &krawtchouk_rf(j, k, two_s, &p)?;
        let term = &term * &krawtchouk_rf(j, kp, two_s, &p)?;
        sum = &sum + &term;
    }
    Ok(sum)
}

/// Closed-form chain vector: component j of f_k is
/// (2s)!/(2s-k)! (-xibar/(1+xi xibar))^k binom(2s,j)^{1/2} xi^j K_j(k).
/// Not projectively renormalized, so the ladder scalar factors are exact.
pub fn closed_form_f(k: u32, two_s: u32) -> Result<VectorRf, VeroneseError> {
    if k > two_s {
        return Err(VeroneseError::ParameterOutOfRange(format!(
            "k = {k} exceeds 2s = {two_s}"
        )));
    }
    let evaluator = KrawtchoukEvaluator::chain(two_s);
    let mut falling: i128 = 1;
    for i in 0..k {
        falling *= (two_s - i) as i128;
    }
    let falling = i64::try_from(falling).map_err(|_| {
        VeroneseError::ParameterOutOfRange(format!("(2s)!/(2s-k)! overflows at 2s = {two_s}"))
    })?;
    let prefactor = &Rf::from_integer(falling)
        * &rf_pow(&(&xibar_rf().neg() / &opx_rf()), k);
    let mut entries = Vec::with_capacity(two_s as usize + 1);
    for j in 0..=two_s {
        let coeff = Rf::from_scalar(RadicalScalar::sqrt_integer(binomial(two_s, j)?)?);
        let component = &(&(&prefactor * &coeff) * &rf_pow(&xi_rf(), j))
            * &evaluator.evaluate(j, k)?;
        entries.push(component);
    }
    Ok(Vector::new(entries))
}

/// The three generalized Pauli matrices in dimension N = 2s + 1, plus the
/// ladder combinations sigma^± = sigma^x ± i sigma^y.
#[derive(Debug, Clone)]
pub struct PauliBasis {
    two_s: u32,
    pub x: MatrixRf,
    pub y: MatrixRf,
    pub z: MatrixRf,
    pub plus: MatrixRf,
    pub minus: MatrixRf,
}

impl PauliBasis {
    pub fn new(two_s: u32) -> Result<Self, VeroneseError> {
        if two_s == 0 {
            return Err(VeroneseError::ParameterOutOfRange("2s must be >= 1".into()));
        }
        let n = two_s as usize + 1;
        let s = Rational::new(BigInt::from(two_s), BigInt::from(2));
        let i_unit = RadicalScalar::imaginary_unit();
        let mut x = Matrix::zeros(n, n);
        let mut y = Matrix::zeros(n, n);
        let mut z = Matrix::zeros(n, n);
        for m in 0..n {
            let diag = &s - &Rational::from_integer(BigInt::from(m as i64));
            *z.at_mut(m, m) = Rf::from_scalar(RadicalScalar::from_rational(
                diag * Rational::from_integer(BigInt::from(2)),
            ));
            for nn in 0..n {
                if m == nn + 1 || m + 1 == nn {
                    let value = &s * &Rational::from_integer(BigInt::from((m + nn + 1) as i64))
                        - Rational::from_integer(BigInt::from((m * nn) as i64));
                    let root = RadicalScalar::sqrt_rational(&value)?;
                    *x.at_mut(m, nn) = Rf::from_scalar(root.clone());
                    let sign = if m == nn + 1 {
                        i_unit.clone()
                    } else {
                        -i_unit.clone()
                    };
                    *y.at_mut(m, nn) = Rf::from_scalar(&sign * &root);
                }
            }
        }
        let i_rf = Rf::from_scalar(i_unit);
        let plus = &x + &y.scalar_mul(&i_rf);
        let minus = &x - &y.scalar_mul(&i_rf);
        Ok(Self {
            two_s,
            x,
            y,
            z,
            plus,
            minus,
        })
    }

    pub fn two_s(&self) -> u32 {
        self.two_s
    }

    pub fn n(&self) -> usize {
        self.two_s as usize + 1
    }

    /// Constant numeric images of (sigma^x, sigma^y, sigma^z).
    pub fn to_numeric(&self) -> [nalgebra::DMatrix<C64>; 3] {
        let at_origin = |m: &MatrixRf| {
            let p = numeric::SamplePoint::conjugate(C64::new(0.0, 0.0));
            numeric::eval_matrix(m, &p).expect("constant matrix evaluates everywhere")
        };
        [at_origin(&self.x), at_origin(&self.y), at_origin(&self.z)]
    }
}

/// Result of reading S^z against the Pauli basis: exists iff
/// S^z = alpha_x sigma^x + alpha_y sigma^y + alpha_z sigma^z exactly.
#[derive(Debug, Clone)]
pub struct SpinDecomposition {
    pub alpha: [Rf; 3],
    pub exists: bool,
    pub residual: MatrixRf,
}

impl SpinDecomposition {
    /// 4 alpha . alpha - 1; zero exactly when the normalization holds.
    pub fn normalization_residual(&self) -> Rf {
        let dot = self
            .alpha
            .iter()
            .fold(Rf::zero(), |acc, a| &acc + &(a * a));
        &(&Rf::from_integer(4) * &dot) - &Rf::one()
    }
}

/// Reads alpha off the first row and verifies globally: the candidate is
/// fixed by entries (0,0), (0,1), (1,0), and the decomposition exists iff
/// the full residual matrix vanishes.
pub fn decompose_spin(sz: &MatrixRf, basis: &PauliBasis) -> Result<SpinDecomposition, VeroneseError> {
    let n = basis.n();
    if sz.shape() != (n, n) {
        return Err(VeroneseError::ParameterOutOfRange(format!(
            "spin matrix is {}x{}, basis dimension {n}",
            sz.shape().0,
            sz.shape().1
        )));
    }
    let two_s_rf = Rf::from_integer(basis.two_s as i64);
    let alpha_z = &sz.at(0, 0).clone() / &two_s_rf;
    // sigma^x_{01} = sqrt(2s); entries (0,1)/(1,0) fix alpha_x, alpha_y.
    let c = basis.x.at(0, 1).clone();
    let two_c = &Rf::from_integer(2) * &c;
    let i_rf = Rf::from_scalar(RadicalScalar::imaginary_unit());
    let alpha_x = &(&sz.at(0, 1).clone() + sz.at(1, 0)) / &two_c;
    let alpha_y = &(&i_rf * &(&sz.at(0, 1).clone() - sz.at(1, 0))) / &two_c;
    let rebuilt = &(&basis.x.scalar_mul(&alpha_x) + &basis.y.scalar_mul(&alpha_y))
        + &basis.z.scalar_mul(&alpha_z);
    let residual = sz - &rebuilt;
    let exists = residual.is_zero();
    Ok(SpinDecomposition {
        alpha: [alpha_x, alpha_y, alpha_z],
        exists,
        residual,
    })
}

/// The spin components built from the Pauli basis by the closed forms; the
/// ladder pair satisfies S^- = (S^+)† and the su(2) commutators exactly.
#[derive(Debug, Clone)]
pub struct SpinComponents {
    pub sz: MatrixRf,
    pub plus: MatrixRf,
    pub minus: MatrixRf,
}

pub fn spin_components(two_s: u32) -> Result<SpinComponents, VeroneseError> {
    let basis = PauliBasis::new(two_s)?;
    spin_components_from(&basis)
}

pub fn spin_components_from(basis: &PauliBasis) -> Result<SpinComponents, VeroneseError> {
    let half = &Rf::one() / &(&Rf::from_integer(2) * &opx_rf());
    let xx = &xi_rf() * &xibar_rf();
    // S^z = [(xi xibar - 1) sigma^z - xi sigma^- - xibar sigma^+] / (2(1+xi xibar))
    let sz = (&(&basis.z.scalar_mul(&(&xx - &Rf::one()))
        - &basis.minus.scalar_mul(&xi_rf()))
        - &basis.plus.scalar_mul(&xibar_rf()))
        .scalar_mul(&half);
    // S^+ = [2 xibar sigma^z + xibar^2 sigma^+ - sigma^-] / (2(1+xi xibar))
    let plus = (&(&basis
        .z
        .scalar_mul(&(&Rf::from_integer(2) * &xibar_rf()))
        + &basis.plus.scalar_mul(&(&xibar_rf() * &xibar_rf())))
        - &basis.minus)
        .scalar_mul(&half);
    // S^- = [2 xi sigma^z - sigma^+ + xi^2 sigma^-] / (2(1+xi xibar))
    let minus = (&(&basis.z.scalar_mul(&(&Rf::from_integer(2) * &xi_rf())) - &basis.plus)
        + &basis.minus.scalar_mul(&(&xi_rf() * &xi_rf())))
        .scalar_mul(&half);
    Ok(SpinComponents { sz, plus, minus })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LadderOp {
    Plus,
    Minus,
}

/// S^± applied to the closed-form f_k.
pub fn apply_ladder(
    op: LadderOp,
    k: u32,
    two_s: u32,
    comps: &SpinComponents,
) -> Result<VectorRf, VeroneseError> {
    let f = closed_form_f(k, two_s)?;
    let m = match op {
        LadderOp::Plus => &comps.plus,
        LadderOp::Minus => &comps.minus,
    };
    Ok(m.mul_vector(&f)?)
}

/// The multiple of the neighbouring chain vector predicted by the ladder
/// action: S^+ f_k = -(1+xi xibar) f_{k+1} and
/// S^- f_k = k(k - 1 - 2s)/(1+xi xibar) f_{k-1}, with f_{-1} = f_{2s+1} = 0.
pub fn ladder_rhs(op: LadderOp, k: u32, two_s: u32) -> Result<VectorRf, VeroneseError> {
    let n = two_s as usize + 1;
    match op {
        LadderOp::Plus => {
            if k == two_s {
                return Ok(Vector::zeros(n));
            }
            let f_next = closed_form_f(k + 1, two_s)?;
            Ok(f_next.scalar_mul(&opx_rf().neg()))
        }
        LadderOp::Minus => {
            if k == 0 {
                return Ok(Vector::zeros(n));
            }
            let f_prev = closed_form_f(k - 1, two_s)?;
            let coeff = k as i64 * (k as i64 - 1 - two_s as i64);
            Ok(f_prev.scalar_mul(&(&Rf::from_integer(coeff) / &opx_rf())))
        }
    }
}

fn sandwich(
    left: &MatrixRf,
    p: &MatrixRf,
    right: &MatrixRf,
    step: usize,
) -> Result<MatrixRf, VeroneseError> {
    let l = QuotMatrixRs::from_matrix(left);
    let m = QuotMatrixRs::from_matrix(p);
    let r = QuotMatrixRs::from_matrix(right);
    let prod = l.mul(&m)?.mul(&r)?;
    let tr = prod.trace()?;
    if tr.is_zero() {
        return Err(VeroneseError::DegenerateChain {
            step,
            reason: "trace of the algebraic recurrence vanishes identically".into(),
        });
    }
    Ok(prod.scale_rf(&tr.inverse()?).to_matrix())
}

/// Algebraic projector recurrence P_{k+1} = S^+ P_k S^- / tr(S^+ P_k S^-).
pub fn algebraic_raise_projector(
    p_k: &MatrixRf,
    comps: &SpinComponents,
    k: usize,
) -> Result<MatrixRf, VeroneseError> {
    sandwich(&comps.plus, p_k, &comps.minus, k + 1)
}

/// Algebraic projector recurrence P_{k-1} = S^- P_k S^+ / tr(S^- P_k S^+).
pub fn algebraic_lower_projector(
    p_k: &MatrixRf,
    comps: &SpinComponents,
    k: usize,
) -> Result<MatrixRf, VeroneseError> {
    sandwich(&comps.minus, p_k, &comps.plus, k)
}

/// Algebraic immersion recurrence
/// X_{k+1} = X_k - i (S^+ P_k S^-/tr(S^+ P_k S^-) + P_k - (2/N) I).
pub fn algebraic_raise_immersion(
    x_k: &MatrixRf,
    p_k: &MatrixRf,
    comps: &SpinComponents,
    k: usize,
) -> Result<MatrixRf, VeroneseError> {
    let n = p_k.rows();
    let raised = algebraic_raise_projector(p_k, comps, k)?;
    let shift = MatrixRf::identity(n).scalar_mul(&Rf::from_scalar(
        RadicalScalar::from_rational(Rational::new(BigInt::from(-2), BigInt::from(n as i64))),
    ));
    let bracket = &(&raised + p_k) + &shift;
    let i_rf = Rf::from_scalar(RadicalScalar::imaginary_unit());
    Ok(x_k - &bracket.scalar_mul(&i_rf))
}

/// Algebraic immersion recurrence
/// X_{k-1} = X_k + i (S^- P_k S^+/tr(S^- P_k S^+) + P_k - (2/N) I).
pub fn algebraic_lower_immersion(
    x_k: &MatrixRf,
    p_k: &MatrixRf,
    comps: &SpinComponents,
    k: usize,
) -> Result<MatrixRf, VeroneseError> {
    let n = p_k.rows();
    let lowered = algebraic_lower_projector(p_k, comps, k)?;
    let shift = MatrixRf::identity(n).scalar_mul(&Rf::from_scalar(
        RadicalScalar::from_rational(Rational::new(BigInt::from(-2), BigInt::from(n as i64))),
    ));
    let bracket = &(&lowered + p_k) + &shift;
    let i_rf = Rf::from_scalar(RadicalScalar::imaginary_unit());
    Ok(x_k + &bracket.scalar_mul(&i_rf))
}

/// Spherical angles recovered from the alpha field at one point of the
/// conjugate locus; phi is undefined where sin(theta) = 0.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SphericalPoint {
    pub theta: f64,
    pub phi: Option<f64>,
    pub alpha: [f64; 3],
}

pub fn spherical_at(dec: &SpinDecomposition, xi: C64) -> Result<SphericalPoint, VeroneseError> {
    if !dec.exists {
        return Err(VeroneseError::NoDecomposition);
    }
    let alpha = numeric::eval_real3(&dec.alpha, xi)?;
    let cos_theta = (2.0 * alpha[2]).clamp(-1.0, 1.0);
    let theta = cos_theta.acos();
    let sin_theta = (1.0 - cos_theta * cos_theta).sqrt();
    let phi = if sin_theta < 1e-12 {
        None
    } else {
        let raw = alpha[1].atan2(alpha[0]);
        Some(raw.rem_euclid(std::f64::consts::TAU))
    };
    Ok(SphericalPoint { theta, phi, alpha })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ThetaConvention {
    /// theta = 2 arctan |xi| (the convention printed in the closed form).
    TwoArctan,
    /// theta = pi - 2 arctan |xi|.
    PiMinusTwoArctan,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PhiConvention {
    /// phi = -arg xi (mod 2 pi).
    MinusArg,
    /// phi = pi + arg xi (mod 2 pi).
    PiPlusArg,
}

/// Which sign conventions the constructed field satisfies, with the xi = 0
/// probe recorded for transparency.
#[derive(Debug, Clone, Serialize)]
pub struct SphericalConventionReport {
    pub theta_convention: Option<ThetaConvention>,
    pub phi_convention: Option<PhiConvention>,
    pub origin_alpha: [f64; 3],
    pub max_theta_dev: f64,
    pub max_phi_dev: f64,
    pub equator_max_theta_dev: f64,
    pub samples: usize,
}

pub fn spherical_convention_report(
    dec: &SpinDecomposition,
    seed: u64,
    samples: usize,
) -> Result<SphericalConventionReport, VeroneseError> {
    if !dec.exists {
        return Err(VeroneseError::NoDecomposition);
    }
    let origin_alpha = numeric::eval_real3(&dec.alpha, C64::new(0.0, 0.0))?;
    let mut sampler = PointSampler::new(seed);
    let tau = std::f64::consts::TAU;
    let mut dev_two = 0.0f64;
    let mut dev_pi_minus = 0.0f64;
    let mut dev_minus_arg = 0.0f64;
    let mut dev_pi_plus = 0.0f64;
    for _ in 0..samples {
        let p = sampler.next_point(SampleMode::Conjugate);
        let sp = spherical_at(dec, p.xi)?;
        let two_atan = 2.0 * p.xi.norm().atan();
        dev_two = dev_two.max((sp.theta - two_atan).abs());
        dev_pi_minus = dev_pi_minus.max((sp.theta - (std::f64::consts::PI - two_atan)).abs());
        if let Some(phi) = sp.phi {
            let arg = p.xi.arg();
            let minus_arg = (-arg).rem_euclid(tau);
            let pi_plus = (std::f64::consts::PI + arg).rem_euclid(tau);
            dev_minus_arg = dev_minus_arg.max(angle_dev(phi, minus_arg));
            dev_pi_plus = dev_pi_plus.max(angle_dev(phi, pi_plus));
        }
    }
    // Equator probe: theta = pi/2 wherever |xi| = 1, under either convention.
    let mut equator_dev = 0.0f64;
    for k in 0..16 {
        let xi = C64::from_polar(1.0, tau * k as f64 / 16.0);
        let sp = spherical_at(dec, xi)?;
        equator_dev = equator_dev.max((sp.theta - std::f64::consts::FRAC_PI_2).abs());
    }
    let pick = |a: f64, b: f64| {
        if a < 1e-9 && a < b {
            Some(true)
        } else if b < 1e-9 {
            Some(false)
        } else {
            None
        }
    };
    let theta_convention = pick(dev_two, dev_pi_minus).map(|first| {
        if first {
            ThetaConvention::TwoArctan
        } else {
            ThetaConvention::PiMinusTwoArctan
        }
    });
    let phi_convention = pick(dev_minus_arg, dev_pi_plus).map(|first| {
        if first {
            PhiConvention::MinusArg
        } else {
            PhiConvention::PiPlusArg
        }
    });
    Ok(SphericalConventionReport {
        theta_convention,
        phi_convention,
        origin_alpha,
        max_theta_dev: dev_two.min(dev_pi_minus),
        max_phi_dev: dev_minus_arg.min(dev_pi_plus),
        equator_max_theta_dev: equator_dev,
        samples,
    })
}

fn angle_dev(a: f64, b: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let d = (a - b).rem_euclid(tau);
    d.min(tau - d)
}

/// Veronese decomposition straight from a freshly built chain.
pub fn veronese_decomposition(model: &SigmaModel) -> Result<SpinDecomposition, VeroneseError> {
    let basis = PauliBasis::new(model.two_s())?;
    decompose_spin(model.spin_matrix(), &basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Rf {
        Rf::from_integer(n)
    }

    #[test]
    fn seed_components() {
        let f = veronese_seed(1).unwrap();
        assert_eq!(*f.at(0), int(1));
        assert_eq!(*f.at(1), xi_rf());
        let f = veronese_seed(2).unwrap();
        let sqrt2 = Rf::from_scalar(RadicalScalar::sqrt_integer(2).unwrap());
        assert_eq!(*f.at(1), &sqrt2 * &xi_rf());
        let f = veronese_seed(4).unwrap();
        let sqrt6 = Rf::from_scalar(RadicalScalar::sqrt_integer(6).unwrap());
        assert_eq!(*f.at(2), &sqrt6 * &(&xi_rf() * &xi_rf()));
    }

    #[test]
    fn krawtchouk_convention_and_symmetry() {
        let p = &(&xi_rf() * &xibar_rf()) / &opx_rf();
        for two_s in 1..=4u32 {
            for j in 0..=two_s {
                assert!(krawtchouk_rf(j, 0, two_s, &p).unwrap().is_one());
                for k in 0..=two_s {
                    assert_eq!(
                        krawtchouk_rf(j, k, two_s, &p).unwrap(),
                        krawtchouk_rf(k, j, two_s, &p).unwrap()
                    );
                }
            }
        }
        // K_1(1; p, 2) = 1 - 1/(2p)
        let k11 = krawtchouk_rf(1, 1, 2, &p).unwrap();
        let expected = &int(1) - &(&int(1) / &(&int(2) * &p));
        assert_eq!(k11, expected);
        // and at p = 1/2 it vanishes
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        assert!(krawtchouk_rational(1, 1, 2, &half).unwrap().is_zero());
    }

    #[test]
    fn lattice_orthogonality_small() {
        for two_s in 1..=3u32 {
            for k in 0..=two_s {
                for kp in 0..=two_s {
                    let r = krawtchouk_orthogonality_residual(two_s, k, kp).unwrap();
                    if k == kp {
                        assert!(!r.is_zero());
                    } else {
                        assert!(r.is_zero(), "2s={two_s} k={k} k'={kp}");
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_matches_recurrence_cp1() {
        // k = 0 reduces to the seed
        let f0 = closed_form_f(0, 1).unwrap();
        assert_eq!(f0, veronese_seed(1).unwrap());
        // k = 1 gives the projector of the recurrence-built P_1
        let f1 = closed_form_f(1, 1).unwrap();
        let p1 = crate::sigma::projector_from_vector(&f1).unwrap();
        let model = SigmaModel::veronese(1).unwrap();
        assert_eq!(p1, *model.projector(1).unwrap());
        // endpoint is antiholomorphic: raising it gives zero
        let top = closed_form_f(1, 1).unwrap();
        assert!(crate::sigma::raise_vector(&top).unwrap().is_zero());
    }

    #[test]
    fn pauli_basis_small_cases() {
        // 2s = 1: the standard Pauli matrices
        let b = PauliBasis::new(1).unwrap();
        assert_eq!(*b.x.at(0, 1), int(1));
        assert_eq!(*b.x.at(1, 0), int(1));
        let i_rf = Rf::from_scalar(RadicalScalar::imaginary_unit());
        assert_eq!(*b.y.at(0, 1), i_rf.clone().neg());
        assert_eq!(*b.y.at(1, 0), i_rf);
        assert_eq!(*b.z.at(0, 0), int(1));
        assert_eq!(*b.z.at(1, 1), int(-1));
        // 2s = 2: (sigma^x)_{01} = sqrt(2)
        let b = PauliBasis::new(2).unwrap();
        let sqrt2 = Rf::from_scalar(RadicalScalar::sqrt_integer(2).unwrap());
        assert_eq!(*b.x.at(0, 1), sqrt2);
    }

    #[test]
    fn pauli_su2_algebra_and_casimir() {
        for two_s in 1..=3u32 {
            let b = PauliBasis::new(two_s).unwrap();
            let two_i = Rf::from_scalar(
                RadicalScalar::imaginary_unit().scale_rational(&Rational::from_integer(2.into())),
            );
            // [x, y] = 2i z and cyclic
            assert_eq!(b.x.commutator(&b.y).unwrap(), b.z.scalar_mul(&two_i));
            assert_eq!(b.y.commutator(&b.z).unwrap(), b.x.scalar_mul(&two_i));
            assert_eq!(b.z.commutator(&b.x).unwrap(), b.y.scalar_mul(&two_i));
            // Casimir: x^2 + y^2 + z^2 = 4s(s+1) I = (2s)(2s+2) I
            let casimir = &(&(&b.x * &b.x) + &(&b.y * &b.y)) + &(&b.z * &b.z);
            let expected = MatrixRf::identity(b.n())
                .scalar_mul(&int((two_s * (two_s + 2)) as i64));
            assert_eq!(casimir, expected);
        }
    }

    #[test]
    fn spin_components_match_chain_cp1() {
        let comps = spin_components(1).unwrap();
        let model = SigmaModel::veronese(1).unwrap();
        assert_eq!(comps.sz, *model.spin_matrix());
        assert_eq!(comps.minus, comps.plus.dagger());
    }

    #[test]
    fn su2_commutators_hold() {
        for two_s in 1..=3u32 {
            let c = spin_components(two_s).unwrap();
            // [S^z, S^±] = ±S^±
            assert_eq!(c.sz.commutator(&c.plus).unwrap(), c.plus);
            assert_eq!(c.sz.commutator(&c.minus).unwrap(), c.minus.map(|e| e.clone().neg()));
            // [S^+, S^-] = 2 S^z
            assert_eq!(
                c.plus.commutator(&c.minus).unwrap(),
                c.sz.scalar_mul(&int(2))
            );
        }
    }

    #[test]
    fn ladder_actions_cp1() {
        let comps = spin_components(1).unwrap();
        // S^+ f_0 = (xibar, -1) = -(1+xi xibar) f_1
        let lhs = apply_ladder(LadderOp::Plus, 0, 1, &comps).unwrap();
        assert_eq!(*lhs.at(0), xibar_rf());
        assert_eq!(*lhs.at(1), int(-1));
        assert_eq!(lhs, ladder_rhs(LadderOp::Plus, 0, 1).unwrap());
        // S^- f_0 = 0 (k = 0 factor)
        let lhs = apply_ladder(LadderOp::Minus, 0, 1, &comps).unwrap();
        assert!(lhs.is_zero());
        // S^+ f_{2s} = 0 (convention boundary)
        let lhs = apply_ladder(LadderOp::Plus, 1, 1, &comps).unwrap();
        assert!(lhs.is_zero());
    }

    #[test]
    fn decomposition_of_cp2_veronese() {
        let model = SigmaModel::veronese(2).unwrap();
        let dec = veronese_decomposition(&model).unwrap();
        assert!(dec.exists);
        let opx2 = &int(2) * &opx_rf();
        assert_eq!(dec.alpha[2], &(&(&xi_rf() * &xibar_rf()) - &int(1)) / &opx2);
        assert_eq!(dec.alpha[0], &(&xi_rf() + &xibar_rf()).neg() / &opx2);
        let i_rf = Rf::from_scalar(RadicalScalar::imaginary_unit());
        assert_eq!(dec.alpha[1], &(&i_rf * &(&xi_rf() - &xibar_rf())) / &opx2);
        assert!(dec.normalization_residual().is_zero());
    }

    #[test]
    fn decomposition_of_constant_sigma_z() {
        let basis = PauliBasis::new(2).unwrap();
        let sz = basis.z.scalar_mul(&Rf::from_scalar(RadicalScalar::from_ratio(1, 2)));
        let dec = decompose_spin(&sz, &basis).unwrap();
        assert!(dec.exists);
        assert!(dec.alpha[0].is_zero());
        assert!(dec.alpha[1].is_zero());
        assert_eq!(dec.alpha[2], Rf::from_scalar(RadicalScalar::from_ratio(1, 2)));
    }

    #[test]
    fn counterexample_is_not_tridiagonal() {
        let seed = Vector::new(vec![int(1), xi_rf(), &xi_rf() * &xi_rf()]);
        let model = SigmaModel::build(2, &seed).unwrap();
        let dec = veronese_decomposition(&model).unwrap();
        assert!(!dec.exists);
        // residual element (1,3) = -3 xi xibar^3 / [(xi^2 xibar^2 + xi xibar + 1)(xi^2 xibar^2 + 4 xi xibar + 1)]
        let xx = &xi_rf() * &xibar_rf();
        let num = &int(-3) * &(&xi_rf() * &rf_pow(&xibar_rf(), 3));
        let d1 = &(&(&xx * &xx) + &xx) + &int(1);
        let d2 = &(&(&xx * &xx) + &(&int(4) * &xx)) + &int(1);
        let expected = &num / &(&d1 * &d2);
        assert_eq!(*dec.residual.at(0, 2), expected);
        // numeric probe: at xi = xibar = 1 the element is -1/6
        let p = numeric::SamplePoint::conjugate(C64::new(1.0, 0.0));
        let v = numeric::eval_rf(dec.residual.at(0, 2), &p).unwrap();
        assert!((v.re + 1.0 / 6.0).abs() < 1e-12 && v.im.abs() < 1e-14);
    }

    #[test]
    fn algebraic_recurrences_match_analytic_cp1() {
        let comps = spin_components(1).unwrap();
        let model = SigmaModel::veronese(1).unwrap();
        let p0 = model.projector(0).unwrap();
        let p1 = algebraic_raise_projector(p0, &comps, 0).unwrap();
        assert_eq!(p1, *model.projector(1).unwrap());
        let x1 = algebraic_raise_immersion(
            model.immersion(0).unwrap(),
            p0,
            &comps,
            0,
        )
        .unwrap();
        assert_eq!(x1, *model.immersion(1).unwrap());
    }

    #[test]
    fn algebraic_round_trip_cp2() {
        let comps = spin_components(2).unwrap();
        let model = SigmaModel::veronese(2).unwrap();
        let p1 = model.projector(1).unwrap();
        let up = algebraic_raise_projector(p1, &comps, 1).unwrap();
        let back = algebraic_lower_projector(&up, &comps, 2).unwrap();
        assert_eq!(back, *p1);
    }

    #[test]
    fn spherical_conventions_detected() {
        let model = SigmaModel::veronese(2).unwrap();
        let dec = veronese_decomposition(&model).unwrap();
        let report = spherical_convention_report(&dec, 5, 40).unwrap();
        // The constructed field satisfies theta = pi - 2 arctan |xi| and
        // phi = pi + arg xi, the opposite of the printed closed form.
        assert_eq!(
            report.theta_convention,
            Some(ThetaConvention::PiMinusTwoArctan)
        );
        assert_eq!(report.phi_convention, Some(PhiConvention::PiPlusArg));
        assert!((report.origin_alpha[2] + 0.5).abs() < 1e-12);
        assert!(report.equator_max_theta_dev < 1e-12);
        // |xi| = 1 probe: both conventions agree at theta = pi/2
        let sp = spherical_at(&dec, C64::new(1.0, 0.0)).unwrap();
        assert!((sp.theta - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }
}
