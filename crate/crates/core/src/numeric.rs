//! Floating-point evaluation of symbolic objects, sample-point generation,
//! finite differences and numeric rank: the independent cross-check for
//! every exact identity in the crate.
//!
//! float64 only — the exact engine carries the proof burden, numerics are an
//! oracle. All stochastic pieces are seeded and reproducible.

use crate::{MatrixRf, Rf, VectorRf, C64};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    /// Denominator magnitude below the pole guard at this point; callers
    /// resample rather than propagate.
    #[error("denominator magnitude {0:.3e} below pole guard")]
    NearPole(f64),
    #[error("matrix is not numerically unitary (deviation {0:.3e})")]
    NotUnitary(f64),
}

const POLE_GUARD: f64 = 1e-13;

/// Evaluation point for the two formal variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePoint {
    pub xi: C64,
    pub xibar: C64,
    pub on_conjugate_locus: bool,
}

impl SamplePoint {
    pub fn independent(xi: C64, xibar: C64) -> Self {
        let on = (xibar - xi.conj()).norm() < 1e-15;
        Self {
            xi,
            xibar,
            on_conjugate_locus: on,
        }
    }

    pub fn conjugate(xi: C64) -> Self {
        Self {
            xi,
            xibar: xi.conj(),
            on_conjugate_locus: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMode {
    /// xi and xibar drawn unrelated: the stronger formal-identity test.
    Independent,
    /// xibar = conj(xi), the physical locus.
    Conjugate,
}

/// Tolerance policy for the numeric cross-checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ToleranceConfig {
    pub identity_rtol: f64,
    pub residual_atol: f64,
    pub rank_svd_threshold: f64,
    pub fd_step: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            identity_rtol: 1e-10,
            residual_atol: 1e-8,
            rank_svd_threshold: 1e-8,
            fd_step: 1e-4,
        }
    }
}

/// Deterministic point source; magnitudes in [0.1, 2.0] keep clear of the
/// degenerate origin and the pole at infinity.
pub struct PointSampler {
    rng: ChaCha8Rng,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn draw(&mut self) -> C64 {
        let r = self.rng.gen_range(0.1..=2.0);
        let phi = self.rng.gen_range(0.0..std::f64::consts::TAU);
        C64::from_polar(r, phi)
    }

    pub fn next_point(&mut self, mode: SampleMode) -> SamplePoint {
        match mode {
            SampleMode::Independent => {
                let xi = self.draw();
                let xibar = self.draw();
                SamplePoint::independent(xi, xibar)
            }
            SampleMode::Conjugate => SamplePoint::conjugate(self.draw()),
        }
    }

    /// Next point at which none of the given denominators is near a pole.
    pub fn next_point_avoiding(&mut self, mode: SampleMode, guards: &[&Rf]) -> SamplePoint {
        loop {
            let p = self.next_point(mode);
            let ok = guards.iter().all(|rf| {
                let (_, den) = rf.eval_c64_raw(p.xi, p.xibar);
                den.norm() >= POLE_GUARD
            });
            if ok {
                return p;
            }
        }
    }
}

pub fn sample_points(n: usize, mode: SampleMode, seed: u64) -> Vec<SamplePoint> {
    let mut s = PointSampler::new(seed);
    (0..n).map(|_| s.next_point(mode)).collect()
}

/// Evaluates a rational function at a point, rejecting near-pole points.
pub fn eval_rf(f: &Rf, p: &SamplePoint) -> Result<C64, NumericError> {
    let (num, den) = f.eval_c64_raw(p.xi, p.xibar);
    if den.norm() < POLE_GUARD {
        return Err(NumericError::NearPole(den.norm()));
    }
    Ok(num / den)
}

pub fn eval_vector(v: &VectorRf, p: &SamplePoint) -> Result<Vec<C64>, NumericError> {
    v.iter().map(|e| eval_rf(e, p)).collect()
}

pub fn eval_matrix(m: &MatrixRf, p: &SamplePoint) -> Result<DMatrix<C64>, NumericError> {
    let (rows, cols) = m.shape();
    let mut out = DMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            out[(i, j)] = eval_rf(m.at(i, j), p)?;
        }
    }
    Ok(out)
}

/// Numeric vector on the conjugate locus from three exact components,
/// discarding the (tiny) imaginary parts.
pub fn eval_real3(alpha: &[Rf; 3], xi: C64) -> Result<[f64; 3], NumericError> {
    let p = SamplePoint::conjugate(xi);
    Ok([
        eval_rf(&alpha[0], &p)?.re,
        eval_rf(&alpha[1], &p)?.re,
        eval_rf(&alpha[2], &p)?.re,
    ])
}

/// Central-difference d d-bar on the conjugate locus: (1/4) of the 5-point
/// Laplacian in (x, y) with step h; truncation error O(h^2).
pub fn fd_wirtinger2<F>(field: &F, x: f64, y: f64, h: f64) -> [f64; 3]
where
    F: Fn(f64, f64) -> [f64; 3],
{
    let c = field(x, y);
    let xp = field(x + h, y);
    let xm = field(x - h, y);
    let yp = field(x, y + h);
    let ym = field(x, y - h);
    std::array::from_fn(|k| (xp[k] + xm[k] + yp[k] + ym[k] - 4.0 * c[k]) / (4.0 * h * h))
}

/// Same stencil for a complex-matrix-valued field.
pub fn fd_wirtinger2_matrix<F>(field: &F, x: f64, y: f64, h: f64) -> DMatrix<C64>
where
    F: Fn(f64, f64) -> DMatrix<C64>,
{
    let c = field(x, y);
    let sum = field(x + h, y) + field(x - h, y) + field(x, y + h) + field(x, y - h);
    (sum - c * C64::new(4.0, 0.0)) / C64::new(4.0 * h * h, 0.0)
}

/// Seeded random unitary: QR of a complex Gaussian matrix.
pub fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
    let g = DMatrix::from_fn(n, n, |_, _| C64::new(normal(rng), normal(rng)));
    let qr = g.qr();
    qr.q()
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; avoids pulling in a distributions crate for one sampler.
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Max-entry deviation of U†U from the identity.
pub fn unitary_deviation(u: &DMatrix<C64>) -> f64 {
    let n = u.nrows();
    let prod = u.adjoint() * u;
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
            dev = dev.max((prod[(i, j)] - expected).norm());
        }
    }
    dev
}

/// Rank by singular-value thresholding.
pub fn numeric_rank(m: &DMatrix<C64>, threshold: f64) -> usize {
    let sv = m.clone().svd(false, false).singular_values;
    sv.iter().filter(|&&s| s > threshold).count()
}

pub fn max_entry_norm(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|e| e.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;
    use crate::Poly;
    use num_traits::One;

    fn opx_inv() -> Rf {
        Rf::new(Poly::one(), Poly::one_plus_xixibar())
    }

    #[test]
    fn eval_simple_values() {
        let p = SamplePoint::conjugate(C64::new(1.0, 0.0));
        // 1/(1 + xi xibar) at xi = xibar = 1 -> 1/2
        assert!((eval_rf(&opx_inv(), &p).unwrap() - C64::new(0.5, 0.0)).norm() < 1e-15);
        // sqrt(2) xi at xi = 1
        let f = Rf::from_poly(
            Poly::variable(Var::Xi)
                .scalar_mul(&crate::RadicalScalar::sqrt_integer(2).unwrap()),
        );
        assert!((eval_rf(&f, &p).unwrap().re - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn near_pole_is_rejected() {
        // 1/(1 + xi xibar) at an independent point with xi xibar = -1
        let p = SamplePoint::independent(C64::new(1.0, 0.0), C64::new(-1.0, 0.0));
        assert!(matches!(
            eval_rf(&opx_inv(), &p),
            Err(NumericError::NearPole(_))
        ));
    }

    #[test]
    fn sampling_is_deterministic_and_in_range() {
        let a = sample_points(50, SampleMode::Independent, 7);
        let b = sample_points(50, SampleMode::Independent, 7);
        assert_eq!(a, b);
        for p in &a {
            assert!(p.xi.norm() >= 0.1 && p.xi.norm() <= 2.0);
        }
        let c = sample_points(10, SampleMode::Conjugate, 7);
        assert!(c.iter().all(|p| p.on_conjugate_locus));
    }

    #[test]
    fn resampling_avoids_poles() {
        let mut s = PointSampler::new(3);
        let guard = opx_inv();
        for _ in 0..100 {
            let p = s.next_point_avoiding(SampleMode::Independent, &[&guard]);
            let (_, den) = guard.eval_c64_raw(p.xi, p.xibar);
            assert!(den.norm() >= 1e-13);
        }
    }

    #[test]
    fn fd_quadratic_field() {
        // x^2 + y^2 = xi xibar: dd-bar = 1; a linear field gives 0.
        let quad = |x: f64, y: f64| [x * x + y * y, x + 2.0 * y, 0.0];
        let got = fd_wirtinger2(&quad, 0.3, -0.7, 1e-4);
        assert!((got[0] - 1.0).abs() < 1e-6);
        assert!(got[1].abs() < 1e-6);
        assert!(got[2].abs() < 1e-6);
    }

    #[test]
    fn fd_halving_reduces_error_fourfold() {
        let field = |x: f64, y: f64| [(x * x + y * y).powi(2), 0.0, 0.0];
        // exact ddbar of (x^2+y^2)^2 = Laplacian/4 = (16(x^2+y^2))/4
        let x = 0.4;
        let y = 0.3;
        let exact = 4.0 * (x * x + y * y);
        let e1 = (fd_wirtinger2(&field, x, y, 2e-3)[0] - exact).abs();
        let e2 = (fd_wirtinger2(&field, x, y, 1e-3)[0] - exact).abs();
        let ratio = e1 / e2;
        assert!((2.5..6.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn random_unitary_is_unitary_and_seeded() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let u = random_unitary(4, &mut rng);
        assert!(unitary_deviation(&u) < 1e-12);
        let mut rng2 = ChaCha8Rng::seed_from_u64(11);
        let u2 = random_unitary(4, &mut rng2);
        assert_eq!(u, u2);
    }

    #[test]
    fn rank_threshold() {
        let mut m = DMatrix::<C64>::identity(3, 3);
        m[(2, 2)] = C64::new(1e-12, 0.0);
        assert_eq!(numeric_rank(&m, 1e-8), 2);
        assert_eq!(numeric_rank(&DMatrix::<C64>::identity(3, 3), 1e-8), 3);
    }
}
