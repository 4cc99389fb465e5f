//! CP^{N-1} solution chains built from a holomorphic seed.
//!
//! A chain is the sequence f_0, ..., f_{2s} of homogeneous vectors obtained
//! by repeatedly applying the raising operator
//!
//! ```text
//! f_{k+1} = (I - f_k ⊗ f_k† / (f_k† . f_k)) . d f_k
//! ```
//!
//! together with the rank-1 projectors P_k onto their directions, the
//! recurrence scalars t_j, the immersion functions X_k of the associated
//! soliton surfaces, and the spin matrix S^z = sum_k (k - s) P_k. Everything
//! here is exact; the numeric engine cross-checks separately.

use crate::linalg::{LinalgError, Matrix, Vector};
use crate::numeric::{self, PointSampler, SampleMode, ToleranceConfig};
use crate::poly::{SymbolicError, Var};
use crate::scalar::{rational_content, Conjugate};
use crate::{MatrixRf, Poly, QuotMatrixRs, RadicalScalar, Rational, Rf, VectorRf};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::ops::Neg;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum ChainError {
    #[error("seed vector is zero")]
    ZeroSeed,
    #[error("seed vector is not holomorphic (xibar appears)")]
    NonHolomorphicSeed,
    #[error("seed has {got} components, expected {expected}")]
    SeedDimension { expected: usize, got: usize },
    #[error("degenerate chain at step {step}: {reason}")]
    DegenerateChain { step: usize, reason: String },
    #[error("index {index} out of range for chain of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Clears denominators and strips common monomial, (1 + xi*xibar) and
/// rational content: the projective normal form of a homogeneous vector.
pub fn normalize_projective(v: &VectorRf) -> VectorRf {
    if v.is_zero() {
        return VectorRf::zeros(v.dim());
    }
    // Common denominator over the structurally distinct entry denominators.
    let mut distinct: Vec<&Poly> = Vec::new();
    for e in v.iter() {
        if !distinct.iter().any(|d| **d == *e.den()) {
            distinct.push(e.den());
        }
    }
    let mut nums: Vec<Poly> = v
        .iter()
        .map(|e| {
            distinct
                .iter()
                .filter(|d| ***d != *e.den())
                .fold(e.num().clone(), |acc, d| &acc * *d)
        })
        .collect();
    // Monomial content.
    let mut content: Option<crate::poly::Monomial> = None;
    for n in &nums {
        if n.is_zero() {
            continue;
        }
        let c = n.monomial_content();
        content = Some(content.map_or(c, |acc| acc.meet(&c)));
    }
    if let Some(c) = content {
        if c != crate::poly::Monomial::ONE {
            nums = nums.iter().map(|n| n.divide_monomial(&c)).collect();
        }
    }
    // Common powers of the chain denominator.
    let opx = Poly::one_plus_xixibar();
    loop {
        let divided: Option<Vec<Poly>> = nums.iter().map(|n| n.div_exact(&opx)).collect();
        match divided {
            Some(d) => nums = d,
            None => break,
        }
    }
    // Rational scalar content.
    if let Some(c) = rational_content(nums.iter().flat_map(|n| n.terms().map(|(_, k)| k))) {
        if !c.is_one() {
            let inv = c.recip();
            nums = nums
                .iter()
                .map(|n| n.map_coefficients(|k| k.scale_rational(&inv)))
                .collect();
        }
    }
    Vector::new(nums.into_iter().map(Rf::from_poly).collect())
}

/// One step of the raising operator, projectively normalized. Returns the
/// zero vector exactly when the input is antiholomorphic.
pub fn raise_vector(f: &VectorRf) -> Result<VectorRf, ChainError> {
    if f.is_zero() {
        return Err(ChainError::ZeroSeed);
    }
    let df = f.try_map(|e| e.wirtinger(Var::Xi))?;
    let norm = f.hermitian_dot(f)?;
    let overlap = f.hermitian_dot(&df)?;
    let raw = Vector::new(
        (0..f.dim())
            .map(|i| &(&norm * df.at(i)) - &(&overlap * f.at(i)))
            .collect(),
    );
    Ok(normalize_projective(&raw))
}

pub(crate) fn projector_quot(f: &VectorRf) -> Result<QuotMatrixRs, ChainError> {
    if f.is_zero() {
        return Err(ChainError::ZeroSeed);
    }
    let clean = normalize_projective(f);
    let nums: Vec<Poly> = clean.iter().map(|e| e.num().clone()).collect();
    let den = nums
        .iter()
        .fold(Poly::zero(), |acc, n| acc + &n.conjugate() * n);
    let outer = Matrix::from_fn(nums.len(), nums.len(), |i, j| &nums[i] * &nums[j].conjugate());
    Ok(QuotMatrixRs::new(outer, den))
}

/// Rank-1 Hermitian projector onto the direction of f: f ⊗ f† / (f† . f).
pub fn projector_from_vector(f: &VectorRf) -> Result<MatrixRf, ChainError> {
    Ok(projector_quot(f)?.to_matrix())
}

fn recurrence_scalar_quot(p_prev: &QuotMatrixRs, step: usize) -> Result<Rf, ChainError> {
    let dp = p_prev.wirtinger(Var::Xi)?;
    let dbp = p_prev.wirtinger(Var::XiBar)?;
    let prod = dp.mul(p_prev)?.mul(&dbp)?;
    let tr = prod.trace()?;
    if tr.is_zero() {
        return Err(ChainError::DegenerateChain {
            step,
            reason: "recurrence trace tr(dP . P . dbar P) vanishes identically".into(),
        });
    }
    Ok(tr.inverse()?)
}

/// The real recurrence scalar t_{k+1} = [tr(dP_k . P_k . dbar P_k)]^{-1}.
pub fn recurrence_scalar(p_prev: &MatrixRf) -> Result<Rf, ChainError> {
    recurrence_scalar_quot(&QuotMatrixRs::from_matrix(p_prev), 0)
}

fn raise_projector_quot(p: &QuotMatrixRs, step: usize) -> Result<QuotMatrixRs, ChainError> {
    let dp = p.wirtinger(Var::Xi)?;
    let dbp = p.wirtinger(Var::XiBar)?;
    let prod = dp.mul(p)?.mul(&dbp)?;
    let tr = prod.trace()?;
    if tr.is_zero() {
        return Err(ChainError::DegenerateChain {
            step,
            reason: "raising a projector past the antiholomorphic end of the chain".into(),
        });
    }
    Ok(prod.scale_rf(&tr.inverse()?))
}

fn lower_projector_quot(p: &QuotMatrixRs, step: usize) -> Result<QuotMatrixRs, ChainError> {
    let dp = p.wirtinger(Var::Xi)?;
    let dbp = p.wirtinger(Var::XiBar)?;
    let prod = dbp.mul(p)?.mul(&dp)?;
    let tr = prod.trace()?;
    if tr.is_zero() {
        return Err(ChainError::DegenerateChain {
            step,
            reason: "lowering a projector past the holomorphic end of the chain".into(),
        });
    }
    Ok(prod.scale_rf(&tr.inverse()?))
}

/// Analytic projector recurrence P_{k+1} = t_{k+1} dP_k . P_k . dbar P_k.
pub fn raise_projector(p: &MatrixRf) -> Result<MatrixRf, ChainError> {
    Ok(raise_projector_quot(&QuotMatrixRs::from_matrix(p), 0)?.to_matrix())
}

/// Analytic projector recurrence P_{k-1} = t_k dbar P_k . P_k . dP_k.
pub fn lower_projector(p: &MatrixRf) -> Result<MatrixRf, ChainError> {
    Ok(lower_projector_quot(&QuotMatrixRs::from_matrix(p), 0)?.to_matrix())
}

/// Euler-Lagrange commutator [P, ddbar P] and the conservation-law residual
/// d[dbar P, P] + dbar[dP, P]; both vanish exactly on solutions.
#[derive(Debug, Clone)]
pub struct ElResidual {
    pub commutator: MatrixRf,
    pub commutator_is_zero: bool,
    pub conservation: MatrixRf,
    pub conservation_is_zero: bool,
}

impl ElResidual {
    pub fn is_zero(&self) -> bool {
        self.commutator_is_zero && self.conservation_is_zero
    }
}

fn el_residual_quot(p: &QuotMatrixRs) -> Result<ElResidual, ChainError> {
    let dp = p.wirtinger(Var::Xi)?;
    let dbp = p.wirtinger(Var::XiBar)?;
    let ddbar = dp.wirtinger(Var::XiBar)?;
    let comm = p.commutator(&ddbar)?;
    let cons = dbp
        .commutator(p)?
        .wirtinger(Var::Xi)?
        .add(&dp.commutator(p)?.wirtinger(Var::XiBar)?)?;
    Ok(ElResidual {
        commutator_is_zero: comm.is_zero(),
        commutator: comm.to_matrix(),
        conservation_is_zero: cons.is_zero(),
        conservation: cons.to_matrix(),
    })
}

pub fn el_residual(p: &MatrixRf) -> Result<ElResidual, ChainError> {
    el_residual_quot(&QuotMatrixRs::from_matrix(p))
}

/// A full solution chain for one seed and one N = 2s + 1.
#[derive(Debug, Clone)]
pub struct SigmaModel {
    two_s: u32,
    f: Vec<VectorRf>,
    p: Vec<MatrixRf>,
    t: Vec<Rf>,
    x: Vec<MatrixRf>,
    sz: MatrixRf,
    p_quot: Vec<QuotMatrixRs>,
    x_quot: Vec<QuotMatrixRs>,
    sz_quot: QuotMatrixRs,
}

impl SigmaModel {
    /// Builds the chain from a holomorphic seed of 2s + 1 components.
    pub fn build(two_s: u32, seed: &VectorRf) -> Result<Self, ChainError> {
        let n = two_s as usize + 1;
        if seed.dim() != n {
            return Err(ChainError::SeedDimension {
                expected: n,
                got: seed.dim(),
            });
        }
        if seed.is_zero() {
            return Err(ChainError::ZeroSeed);
        }
        if !seed.iter().all(Rf::is_holomorphic) {
            return Err(ChainError::NonHolomorphicSeed);
        }
        let mut f = vec![normalize_projective(seed)];
        for k in 0..two_s as usize {
            let next = raise_vector(&f[k])?;
            if next.is_zero() {
                return Err(ChainError::DegenerateChain {
                    step: k + 1,
                    reason: "raising produced the zero vector before the chain closed".into(),
                });
            }
            f.push(next);
        }
        let beyond = raise_vector(&f[two_s as usize])?;
        if !beyond.is_zero() {
            return Err(ChainError::DegenerateChain {
                step: n,
                reason: "chain does not terminate at an antiholomorphic vector".into(),
            });
        }

        let p_quot: Vec<QuotMatrixRs> = f
            .iter()
            .map(projector_quot)
            .collect::<Result<_, _>>()?;

        let mut t = vec![Rf::zero(); n + 1];
        for j in 1..=two_s as usize {
            t[j] = recurrence_scalar_quot(&p_quot[j - 1], j)?;
        }

        // X_k = -i (P_k + 2 sum_{j<k} P_j) + i (1 + 2k)/(2s+1) I
        let minus_i = -RadicalScalar::imaginary_unit();
        let two = RadicalScalar::from_integer(2);
        let mut x_quot: Vec<QuotMatrixRs> = Vec::with_capacity(n);
        let mut below: Option<QuotMatrixRs> = None;
        for (k, pk) in p_quot.iter().enumerate() {
            let mut m = pk.clone();
            if let Some(sum_below) = &below {
                m = m.add(&sum_below.scale_scalar(&two))?;
            }
            m = m.scale_scalar(&minus_i);
            let coeff = RadicalScalar::imaginary_unit().scale_rational(&Rational::new(
                BigInt::from(1 + 2 * k as i64),
                BigInt::from(n as i64),
            ));
            let shift = QuotMatrixRs::identity(n).scale_scalar(&coeff);
            m = m.add(&shift)?;
            x_quot.push(m);
            below = Some(match below {
                None => pk.clone(),
                Some(acc) => acc.add(pk)?,
            });
        }

        // S^z = sum_k (k - s) P_k
        let mut sz_quot = QuotMatrixRs::zeros(n, n);
        for (k, pk) in p_quot.iter().enumerate() {
            let weight = RadicalScalar::from_rational(Rational::new(
                BigInt::from(2 * k as i64 - two_s as i64),
                BigInt::from(2),
            ));
            if weight.is_zero() {
                continue;
            }
            sz_quot = sz_quot.add(&pk.scale_scalar(&weight))?;
        }

        let p = p_quot.iter().map(QuotMatrixRs::to_matrix).collect();
        let x = x_quot.iter().map(QuotMatrixRs::to_matrix).collect();
        let sz = sz_quot.to_matrix();
        Ok(Self {
            two_s,
            f,
            p,
            t,
            x,
            sz,
            p_quot,
            x_quot,
            sz_quot,
        })
    }

    /// The Veronese chain for the given 2s.
    pub fn veronese(two_s: u32) -> Result<Self, ChainError> {
        let seed = crate::veronese::veronese_seed(two_s).map_err(|e| {
            ChainError::DegenerateChain {
                step: 0,
                reason: e.to_string(),
            }
        })?;
        Self::build(two_s, &seed)
    }

    pub fn two_s(&self) -> u32 {
        self.two_s
    }

    pub fn n(&self) -> usize {
        self.two_s as usize + 1
    }

    /// The spin s = (N - 1)/2 as an exact rational.
    pub fn spin(&self) -> Rational {
        Rational::new(BigInt::from(self.two_s), BigInt::from(2))
    }

    pub fn homogeneous(&self, k: usize) -> Result<&VectorRf, ChainError> {
        self.f.get(k).ok_or(ChainError::IndexOutOfRange {
            index: k,
            len: self.n(),
        })
    }

    pub fn projector(&self, k: usize) -> Result<&MatrixRf, ChainError> {
        self.p.get(k).ok_or(ChainError::IndexOutOfRange {
            index: k,
            len: self.n(),
        })
    }

    pub fn projectors(&self) -> &[MatrixRf] {
        &self.p
    }

    /// t_j for j = 0..=2s+1 (both ends zero by convention).
    pub fn recurrence_scalars(&self) -> &[Rf] {
        &self.t
    }

    pub fn immersion(&self, k: usize) -> Result<&MatrixRf, ChainError> {
        self.x.get(k).ok_or(ChainError::IndexOutOfRange {
            index: k,
            len: self.n(),
        })
    }

    pub fn immersions(&self) -> &[MatrixRf] {
        &self.x
    }

    pub fn spin_matrix(&self) -> &MatrixRf {
        &self.sz
    }

    /// Exact verification of the defining constraints of the chain.
    pub fn verify_constraints(&self) -> ConstraintsReport {
        let n = self.n();
        let mut report = ConstraintsReport::default();

        for (k, p) in self.p_quot.iter().enumerate() {
            if !p.is_hermitian() {
                report.fail(format!("P_{k} is not Hermitian"));
            }
            // P^2 = P as A.A = A.d over the common denominator.
            let a2 = p.nums().try_mul(p.nums()).expect("square");
            let ad = p.nums().map(|e| e * p.den());
            if a2 != ad {
                report.fail(format!("P_{k} is not idempotent"));
            }
            let tr = p.nums().trace().expect("square");
            if tr != *p.den() {
                report.fail(format!("tr P_{k} != 1"));
            }
        }
        for j in 0..n {
            for k in (j + 1)..n {
                let prod = self
                    .p_quot[j]
                    .nums()
                    .try_mul(self.p_quot[k].nums())
                    .expect("orthogonality product");
                if !prod.is_zero() {
                    report.fail(format!("P_{j} . P_{k} != 0"));
                }
            }
        }
        // Partition of unity.
        let mut sum = self.p_quot[0].clone();
        for p in &self.p_quot[1..] {
            sum = sum.add(p).expect("partition sum");
        }
        if !sum.equiv(&QuotMatrixRs::identity(n)) {
            report.fail("sum_k P_k != I".into());
        }
        // The two trace definitions of t_j agree, and each t_j is sigma-real.
        for j in 1..=self.two_s as usize {
            let via_lower = lower_trace(&self.p_quot[j]);
            let via_raise = raise_trace(&self.p_quot[j - 1]);
            match (via_lower, via_raise) {
                (Ok(a), Ok(b)) if a == b => {}
                _ => report.fail(format!("two trace definitions of t_{j} disagree")),
            }
            if !self.t[j].is_sigma_real() {
                report.fail(format!("t_{j} is not sigma-real"));
            }
        }
        report
    }

    /// Exact E-L and conservation-law residuals of P_k.
    pub fn verify_el(&self, k: usize) -> Result<ElResidual, ChainError> {
        if k >= self.n() {
            return Err(ChainError::IndexOutOfRange {
                index: k,
                len: self.n(),
            });
        }
        el_residual_quot(&self.p_quot[k])
    }

    /// Exact checks on the immersion functions X_k.
    pub fn verify_immersions(&self) -> Result<ImmersionReport, ChainError> {
        let n = self.n();
        let mut report = ImmersionReport::default();
        for (k, x) in self.x_quot.iter().enumerate() {
            if !x.trace()?.is_zero() {
                report.fail(format!("tr X_{k} != 0"));
            }
            if !x.dagger().equiv(&x.neg()) {
                report.fail(format!("X_{k} is not anti-Hermitian"));
            }
        }
        for j in 0..n {
            for k in (j + 1)..n {
                if !self.x_quot[j]
                    .commutator(&self.x_quot[k])?
                    .is_zero()
                {
                    report.fail(format!("[X_{j}, X_{k}] != 0"));
                }
            }
        }
        // Telescoping: X_{k+1} - X_k = -i (P_{k+1} + P_k - (2/N) I).
        let minus_i = -RadicalScalar::imaginary_unit();
        for k in 0..n - 1 {
            let lhs = self.x_quot[k + 1].sub(&self.x_quot[k])?;
            let shift = QuotMatrixRs::identity(n).scale_scalar(&RadicalScalar::from_rational(
                Rational::new(BigInt::from(-2), BigInt::from(n as i64)),
            ));
            let rhs = self.p_quot[k + 1]
                .add(&self.p_quot[k])?
                .add(&shift)?
                .scale_scalar(&minus_i);
            if !lhs.equiv(&rhs) {
                report.fail(format!("X_{} - X_{k} telescoping fails", k + 1));
            }
        }
        // S^z = (-i/2) sum_k X_k.
        let mut sum = self.x_quot[0].clone();
        for x in &self.x_quot[1..] {
            sum = sum.add(x)?;
        }
        let half_minus_i = RadicalScalar::imaginary_unit()
            .scale_rational(&Rational::new(BigInt::from(-1), BigInt::from(2)));
        if !sum.scale_scalar(&half_minus_i).equiv(&self.sz_quot) {
            report.fail("S^z != (-i/2) sum_k X_k".into());
        }
        // On CP^1 the only two surfaces coincide.
        if n == 2 && !self.x_quot[0].equiv(&self.x_quot[1]) {
            report.fail("X_0 != X_1 for N = 2".into());
        }
        Ok(report)
    }

    /// Trace, Killing form, minimal polynomial, determinant parity and
    /// numeric rank of S^z.
    pub fn spin_properties(
        &self,
        tol: &ToleranceConfig,
        sample_seed: u64,
    ) -> Result<SpinPropertyReport, ChainError> {
        let n = self.n();
        let sz = &self.sz_quot;
        let trace_is_zero = sz.trace()?.is_zero();

        // tr(S^z . S^z)/N = (N^2 - 1)/12, exactly.
        let sz2 = sz.mul(sz)?;
        let killing = &sz2.trace()? * &Rf::from_scalar(RadicalScalar::from_rational(
            Rational::new(BigInt::one(), BigInt::from(n as i64)),
        ));
        let expected_killing = Rf::from_scalar(RadicalScalar::from_rational(Rational::new(
            BigInt::from((n * n - 1) as i64),
            BigInt::from(12),
        )));
        let killing_ok = killing == expected_killing;

        // Minimal polynomial: prod_k (S^z - (k - s) I) = 0. The chain
        // denominator is cancelled step by step to keep the product flat.
        let mut product = QuotMatrixRs::identity(n);
        for k in 0..n {
            let lambda = RadicalScalar::from_rational(Rational::new(
                BigInt::from(2 * k as i64 - self.two_s as i64),
                BigInt::from(2),
            ));
            let factor = sz.sub(&QuotMatrixRs::identity(n).scale_scalar(&lambda))?;
            product = product.mul(&factor)?;
            product.cancel_factor(sz.den());
        }
        let minpoly_is_zero = product.is_zero();

        // Exact determinant via fraction-free elimination on the numerators.
        let det_num = bareiss_determinant(sz.nums());
        let det_is_zero = det_num.is_zero();
        let parity_ok = det_is_zero == !n.is_multiple_of(2);

        // Numeric rank at a generic conjugate-locus point.
        let guard = Rf::new(Poly::one(), sz.den().clone());
        let mut sampler = PointSampler::new(sample_seed);
        let point = sampler.next_point_avoiding(SampleMode::Conjugate, &[&guard]);
        let numeric = numeric::eval_matrix(&self.sz, &point).map_err(|e| {
            ChainError::DegenerateChain {
                step: 0,
                reason: format!("numeric rank sampling failed: {e}"),
            }
        })?;
        let numeric_rank = numeric::numeric_rank(&numeric, tol.rank_svd_threshold);
        let expected_rank = if n.is_multiple_of(2) { n } else { n - 1 };

        Ok(SpinPropertyReport {
            trace_is_zero,
            killing_ok,
            killing_value: killing,
            minpoly_is_zero,
            det_is_zero,
            parity_ok,
            numeric_rank,
            expected_rank,
            rank_ok: numeric_rank == expected_rank,
        })
    }
}

fn raise_trace(p: &QuotMatrixRs) -> Result<Rf, ChainError> {
    let dp = p.wirtinger(Var::Xi)?;
    let dbp = p.wirtinger(Var::XiBar)?;
    Ok(dp.mul(p)?.mul(&dbp)?.trace()?)
}

fn lower_trace(p: &QuotMatrixRs) -> Result<Rf, ChainError> {
    let dp = p.wirtinger(Var::Xi)?;
    let dbp = p.wirtinger(Var::XiBar)?;
    Ok(dbp.mul(p)?.mul(&dp)?.trace()?)
}

/// Fraction-free Bareiss determinant over the polynomial ring.
pub(crate) fn bareiss_determinant(m: &Matrix<Poly>) -> Poly {
    let n = m.rows();
    assert_eq!(n, m.cols(), "determinant of a non-square matrix");
    if n == 0 {
        return Poly::one();
    }
    let mut a: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| m.at(i, j).clone()).collect())
        .collect();
    let mut prev = Poly::one();
    let mut sign = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Poly::zero();
            };
            a.swap(k, swap);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let numer = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = numer
                    .div_exact(&prev)
                    .expect("Bareiss division is exact");
            }
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

#[derive(Debug, Clone, Default)]
pub struct ConstraintsReport {
    pub failures: Vec<String>,
}

impl ConstraintsReport {
    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Default)]
pub struct ImmersionReport {
    pub failures: Vec<String>,
}

impl ImmersionReport {
    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct SpinPropertyReport {
    pub trace_is_zero: bool,
    pub killing_ok: bool,
    pub killing_value: Rf,
    pub minpoly_is_zero: bool,
    pub det_is_zero: bool,
    pub parity_ok: bool,
    pub numeric_rank: usize,
    pub expected_rank: usize,
    pub rank_ok: bool,
}

impl SpinPropertyReport {
    pub fn is_ok(&self) -> bool {
        self.trace_is_zero
            && self.killing_ok
            && self.minpoly_is_zero
            && self.parity_ok
            && self.rank_ok
    }
}
