//! Finite Q(i)-linear combinations of square roots of squarefree integers.
//!
//! A value is stored as a map radicand -> coefficient, where every radicand
//! is a distinct squarefree positive integer (1 holds the Gaussian-rational
//! part) and no zero coefficient is ever kept. The representation is unique,
//! so `==` is both structural and value equality.

use super::gaussian::ratio_to_f64;
use super::{Conjugate, GaussianRational, Ring, Scalar, ScalarError};
use num_bigint::BigInt;
use num_integer::gcd;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Largest number of distinct radicands a product may produce.
pub const DEFAULT_RADICAND_LIMIT: usize = 64;
/// Trial-division bound for extracting the square part of a radicand.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

static RADICAND_LIMIT: std::sync::atomic::AtomicUsize =
    std::sync::atomic::AtomicUsize::new(DEFAULT_RADICAND_LIMIT);

/// Current bound on distinct radicands per value.
pub fn radicand_limit() -> usize {
    RADICAND_LIMIT.load(std::sync::atomic::Ordering::Relaxed)
}

/// Overrides the radicand bound (default 64).
pub fn set_radicand_limit(limit: usize) {
    RADICAND_LIMIT.store(limit, std::sync::atomic::Ordering::Relaxed)
}

/// Element of Q(i)(sqrt(d_1), ..., sqrt(d_k)): sum of c_d * sqrt(d) over
/// distinct squarefree d, with Gaussian-rational coefficients c_d.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RadicalScalar {
    terms: BTreeMap<u64, GaussianRational>,
}

impl RadicalScalar {
    pub fn from_gaussian(c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(1, c);
        }
        Self { terms }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::from_gaussian(GaussianRational::from_rational(q))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_gaussian(GaussianRational::from_integer(n))
    }

    pub fn imaginary_unit() -> Self {
        Self::from_gaussian(GaussianRational::i())
    }

    /// Exact sqrt(n) for a nonnegative integer n, reduced to g*sqrt(r) with
    /// r squarefree.
    pub fn sqrt_integer(n: u64) -> Result<Self, ScalarError> {
        if n == 0 {
            return Ok(Self::zero());
        }
        let (square, radicand) = extract_square_part(n)?;
        let coeff = GaussianRational::from_rational(BigRational::from_integer(BigInt::from(square)));
        let mut terms = BTreeMap::new();
        terms.insert(radicand, coeff);
        Ok(Self { terms })
    }

    /// Exact sqrt(q) for a nonnegative rational q: sqrt(n/d) = sqrt(n*d)/d.
    pub fn sqrt_rational(q: &BigRational) -> Result<Self, ScalarError> {
        if q.is_negative() {
            return Err(ScalarError::NegativeRadicand);
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        let numer: u64 = num_traits::ToPrimitive::to_u64(q.numer())
            .ok_or_else(|| ScalarError::RadicandOverflow(format!("numerator of {q} too large")))?;
        let denom: u64 = num_traits::ToPrimitive::to_u64(q.denom())
            .ok_or_else(|| ScalarError::RadicandOverflow(format!("denominator of {q} too large")))?;
        let product = numer
            .checked_mul(denom)
            .ok_or_else(|| ScalarError::RadicandOverflow(format!("sqrt({q}) radicand overflow")))?;
        let root = Self::sqrt_integer(product)?;
        let inv_d = BigRational::new(BigInt::one(), BigInt::from(denom));
        Ok(root.scale_rational(&inv_d))
    }

    pub fn is_gaussian(&self) -> bool {
        self.terms.keys().all(|&d| d == 1)
    }

    pub fn is_rational(&self) -> bool {
        self.is_gaussian() && self.gaussian_part().is_real()
    }

    /// Coefficient of the d = 1 basis element.
    pub fn gaussian_part(&self) -> GaussianRational {
        self.terms.get(&1).cloned().unwrap_or_default()
    }

    pub fn as_gaussian(&self) -> Option<GaussianRational> {
        self.is_gaussian().then(|| self.gaussian_part())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_gaussian()
            .and_then(|g| g.as_rational().cloned())
    }

    pub fn radicands(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.keys().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &GaussianRational)> {
        self.terms.iter().map(|(&d, c)| (d, c))
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&d, c)| (d, c.scale(q)))
                .collect(),
        }
    }

    fn insert_term(terms: &mut BTreeMap<u64, GaussianRational>, d: u64, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Exact product; every cross term sqrt(d1)*sqrt(d2) is reduced through
    /// gcd(d1, d2), which keeps all radicands squarefree.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self, ScalarError> {
        let mut terms = BTreeMap::new();
        for (&d1, c1) in &self.terms {
            for (&d2, c2) in &rhs.terms {
                let g = gcd(d1, d2);
                let r = (d1 / g).checked_mul(d2 / g).ok_or_else(|| {
                    ScalarError::RadicandOverflow(format!("sqrt({d1})*sqrt({d2}) radicand overflow"))
                })?;
                let mut coeff = c1 * c2;
                if g > 1 {
                    coeff = coeff.scale(&BigRational::from_integer(BigInt::from(g)));
                }
                Self::insert_term(&mut terms, r, coeff);
            }
        }
        let limit = radicand_limit();
        if terms.len() > limit {
            return Err(ScalarError::RadicandOverflow(format!(
                "{} distinct radicands (limit {limit})",
                terms.len()
            )));
        }
        Ok(Self { terms })
    }

    /// Negates every term whose radicand is divisible by the prime p; this is
    /// the field automorphism sending sqrt(p) to -sqrt(p).
    fn flip_prime(&self, p: u64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&d, c)| {
                    if d.is_multiple_of(p) {
                        (d, c.clone().neg())
                    } else {
                        (d, c.clone())
                    }
                })
                .collect(),
        }
    }

    fn smallest_support_prime(&self) -> Option<u64> {
        self.terms
            .keys()
            .filter(|&&d| d > 1)
            .map(|&d| smallest_prime_factor(d))
            .min()
    }

    /// Exact multiplicative inverse. The denominator is cleared one support
    /// prime at a time: multiplying by the sign-flipped image under sigma_p
    /// leaves a value fixed by sigma_p, hence free of radicands divisible
    /// by p.
    pub fn try_inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let mut num = Self::one();
        let mut den = self.clone();
        while let Some(p) = den.smallest_support_prime() {
            let flip = den.flip_prime(p);
            num = num.try_mul(&flip)?;
            den = den.try_mul(&flip)?;
            debug_assert!(den.terms.keys().all(|&d| !d.is_multiple_of(p)));
        }
        let g = den.gaussian_part().try_inverse()?;
        num.try_mul(&Self::from_gaussian(g))
    }

    pub fn eval_c64(&self) -> num_complex::Complex64 {
        self.terms
            .iter()
            .map(|(&d, c)| c.eval_c64() * (d as f64).sqrt())
            .sum()
    }

    /// Crude size measure (max of numerator/denominator magnitudes) used to
    /// bound proptest inputs.
    pub fn height(&self) -> f64 {
        self.terms
            .values()
            .flat_map(|c| [c.re().clone(), c.im().clone()])
            .flat_map(|q| {
                [
                    ratio_to_f64(&BigRational::from_integer(q.numer().abs())),
                    ratio_to_f64(&BigRational::from_integer(q.denom().clone())),
                ]
            })
            .fold(0.0, f64::max)
    }
}

impl Conjugate for RadicalScalar {
    /// Complex conjugation: conjugates every coefficient and fixes the
    /// radicands (each sqrt(d) is real and positive).
    fn conjugate(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&d, c)| (d, c.conjugate()))
                .collect(),
        }
    }
}

impl Zero for RadicalScalar {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for RadicalScalar {
    fn one() -> Self {
        Self::from_gaussian(GaussianRational::one())
    }
    fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.gaussian_part().is_one()
    }
}

impl Ring for RadicalScalar {
    fn from_integer(n: i64) -> Self {
        RadicalScalar::from_integer(n)
    }
}

impl Scalar for RadicalScalar {
    fn try_inverse(&self) -> Option<Self> {
        RadicalScalar::try_inverse(self).ok()
    }
}

impl Add for RadicalScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut terms = self.terms;
        for (d, c) in rhs.terms {
            Self::insert_term(&mut terms, d, c);
        }
        Self { terms }
    }
}

impl<'a> Add<&'a RadicalScalar> for &RadicalScalar {
    type Output = RadicalScalar;
    fn add(self, rhs: &'a RadicalScalar) -> RadicalScalar {
        self.clone() + rhs.clone()
    }
}

impl Sub for RadicalScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut terms = self.terms;
        for (d, c) in rhs.terms {
            Self::insert_term(&mut terms, d, c.neg());
        }
        Self { terms }
    }
}

impl Neg for RadicalScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(d, c)| (d, c.neg())).collect(),
        }
    }
}

impl Mul for RadicalScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        (&self).mul(&rhs)
    }
}

impl<'a> Mul<&'a RadicalScalar> for &RadicalScalar {
    type Output = RadicalScalar;
    fn mul(self, rhs: &'a RadicalScalar) -> RadicalScalar {
        self.try_mul(rhs)
            .expect("radical product left the supported field tower")
    }
}

impl Div for RadicalScalar {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let inv = rhs
            .try_inverse()
            .expect("division by zero RadicalScalar");
        (&self).mul(&inv)
    }
}

impl fmt::Display for RadicalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&d, c) in &self.terms {
            let piece = if d == 1 {
                let s = c.to_string();
                // Parenthesize composite Gaussian parts so rendered sums
                // reparse unambiguously.
                if s.contains(' ') {
                    format!("({s})")
                } else {
                    s
                }
            } else if c.is_one() {
                format!("sqrt({d})")
            } else if c.clone().neg().is_one() {
                format!("-sqrt({d})")
            } else {
                let s = c.to_string();
                if s.contains(' ') {
                    format!("({s})*sqrt({d})")
                } else {
                    format!("{s}*sqrt({d})")
                }
            };
            if first {
                write!(f, "{piece}")?;
                first = false;
            } else if let Some(rest) = piece.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {piece}")?;
            }
        }
        Ok(())
    }
}

/// Positive rational content across every Gaussian component of the given
/// scalars: gcd of all numerators over lcm of all denominators. Dividing by
/// it leaves coefficients with coprime integer parts.
pub fn rational_content<'a, I>(values: I) -> Option<BigRational>
where
    I: IntoIterator<Item = &'a RadicalScalar>,
{
    use num_integer::Integer as _;
    let mut num_gcd = BigInt::from(0);
    let mut den_lcm = BigInt::from(1);
    let mut any = false;
    for v in values {
        for (_, c) in v.terms() {
            for q in [c.re(), c.im()] {
                if q.is_zero() {
                    continue;
                }
                any = true;
                num_gcd = num_gcd.gcd(&q.numer().abs());
                den_lcm = den_lcm.lcm(q.denom());
            }
        }
    }
    any.then(|| BigRational::new(num_gcd, den_lcm))
}

/// Writes n = square^2 * radicand with radicand squarefree. Trial division
/// handles the small primes; the leftover cofactor is certified squarefree
/// by a perfect-square check plus deterministic Miller-Rabin.
fn extract_square_part(n: u64) -> Result<(u64, u64), ScalarError> {
    let bound = DEFAULT_FACTOR_BOUND;
    let mut remaining = n;
    let mut square: u64 = 1;
    let mut radicand: u64 = 1;
    let mut p: u64 = 2;
    while p <= bound && p * p <= remaining {
        if remaining.is_multiple_of(p) {
            let mut e = 0u32;
            while remaining.is_multiple_of(p) {
                remaining /= p;
                e += 1;
            }
            for _ in 0..e / 2 {
                square *= p;
            }
            if e % 2 == 1 {
                radicand *= p;
            }
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    match remaining {
        1 => {}
        c => {
            let root = isqrt(c);
            if root * root == c {
                square *= root;
            } else if is_prime_u64(c) || c <= bound.saturating_mul(bound).saturating_mul(bound) {
                // A non-square cofactor with no factor <= bound and value
                // <= bound^3 is a prime or a product of two distinct primes,
                // hence squarefree.
                radicand *= c;
            } else {
                return Err(ScalarError::RadicandOverflow(format!(
                    "cannot certify squarefree part of {n}"
                )));
            }
        }
    }
    Ok((square, radicand))
}

fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x > 0 && x * x > n {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|s| s <= n) {
        x += 1;
    }
    x
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut p = 3;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return p;
        }
        p += 2;
    }
    n
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
