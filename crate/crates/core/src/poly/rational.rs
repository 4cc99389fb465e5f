use super::monomial::Var;
use super::polynomial::Polynomial;
use super::{degree_cap, SymbolicError};
use crate::scalar::{Conjugate, Ring, Scalar};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Ratio of two bivariate polynomials, den != 0.
///
/// Normal form: common monomial content cancelled, common powers of
/// (1 + xi*xibar) cancelled, denominator monic. No full polynomial gcd is
/// computed; equality is decided by cross-multiplication, which is exact on
/// canonical polynomials.
#[derive(Clone, Debug)]
pub struct RationalFunction<K> {
    num: Polynomial<K>,
    den: Polynomial<K>,
}

impl<K: Scalar> RationalFunction<K> {
    pub fn new(num: Polynomial<K>, den: Polynomial<K>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let mut rf = Self { num, den };
        rf.normalize();
        rf
    }

    pub fn from_poly(num: Polynomial<K>) -> Self {
        Self {
            num,
            den: Polynomial::one(),
        }
    }

    pub fn from_scalar(c: K) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn variable(v: Var) -> Self {
        Self::from_poly(Polynomial::variable(v))
    }

    pub fn num(&self) -> &Polynomial<K> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<K> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<K> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_holomorphic(&self) -> bool {
        self.num.is_holomorphic() && self.den.is_holomorphic()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Polynomial::one();
            return;
        }
        // Common monomial content of the pair.
        let common = self
            .num
            .monomial_content()
            .meet(&self.den.monomial_content());
        if common != super::Monomial::ONE {
            self.num = self.num.divide_monomial(&common);
            self.den = self.den.divide_monomial(&common);
        }
        // The chain denominator (1 + xi*xibar) shows up everywhere; trial
        // division keeps the representation from swelling.
        let opx = Polynomial::one_plus_xixibar();
        loop {
            if self.den.is_one() {
                break;
            }
            match (self.num.div_exact(&opx), self.den.div_exact(&opx)) {
                (Some(n), Some(d)) => {
                    self.num = n;
                    self.den = d;
                }
                _ => break,
            }
        }
        // Full cancellation when the quotient is a polynomial.
        if !self.den.is_one() && self.num.degree() >= self.den.degree() {
            if let Some(q) = self.num.div_exact(&self.den) {
                self.num = q;
                self.den = Polynomial::one();
            }
        }
        // Monic denominator pins the scale.
        if let Some((_, lc)) = self.den.leading() {
            if !lc.is_one() {
                let inv = lc
                    .try_inverse()
                    .expect("nonzero leading coefficient in a field");
                self.num = self.num.scalar_mul(&inv);
                self.den = self.den.scalar_mul(&inv);
            }
        }
    }

    pub fn inverse(&self) -> Result<Self, SymbolicError> {
        if self.num.is_zero() {
            return Err(SymbolicError::DivisionByZero);
        }
        Ok(Self::new(self.den.clone(), self.num.clone()))
    }

    /// Equality by cross-multiplication with the degree cap enforced.
    pub fn try_equal(&self, other: &Self) -> Result<bool, SymbolicError> {
        let cap = degree_cap();
        let left = self.num.degree() + other.den.degree();
        let right = other.num.degree() + self.den.degree();
        let worst = left.max(right);
        if worst > cap {
            return Err(SymbolicError::DegreeOverflow { degree: worst, cap });
        }
        Ok(&self.num * &other.den == &other.num * &self.den)
    }

    /// Formal partial derivative via the quotient rule, content-reduced.
    pub fn wirtinger(&self, v: Var) -> Result<Self, SymbolicError> {
        let cap = degree_cap();
        let worst = (self.num.degree() + self.den.degree()).max(2 * self.den.degree());
        if worst > cap {
            return Err(SymbolicError::DegreeOverflow { degree: worst, cap });
        }
        if self.den.is_one() {
            return Ok(Self::from_poly(self.num.wirtinger(v)));
        }
        let num = &(&self.num.wirtinger(v) * &self.den) - &(&self.num * &self.den.wirtinger(v));
        let den = &self.den * &self.den;
        Ok(Self::new(num, den))
    }

    /// Fixed by the sigma involution; for scalars appearing in the model
    /// this is the statement that the value is real on the physical locus.
    pub fn is_sigma_real(&self) -> bool {
        self.conjugate() == *self
    }
}

impl RationalFunction<crate::RadicalScalar> {
    /// Unchecked evaluation; the numeric engine wraps this with near-pole
    /// rejection.
    pub fn eval_c64_raw(&self, xi: crate::C64, xibar: crate::C64) -> (crate::C64, crate::C64) {
        (self.num.eval_c64(xi, xibar), self.den.eval_c64(xi, xibar))
    }
}

impl<K: Scalar> PartialEq for RationalFunction<K> {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl<K: Scalar> Zero for RationalFunction<K> {
    fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<K: Scalar> One for RationalFunction<K> {
    fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }
    fn is_one(&self) -> bool {
        self.num == self.den
    }
}

impl<K: Scalar> Add for RationalFunction<K> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        (&self).add(&rhs)
    }
}

impl<'a, K: Scalar> Add<&'a RationalFunction<K>> for &RationalFunction<K> {
    type Output = RationalFunction<K>;
    fn add(self, rhs: &'a RationalFunction<K>) -> RationalFunction<K> {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<K: Scalar> Sub for RationalFunction<K> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        (&self).sub(&rhs)
    }
}

impl<'a, K: Scalar> Sub<&'a RationalFunction<K>> for &RationalFunction<K> {
    type Output = RationalFunction<K>;
    fn sub(self, rhs: &'a RationalFunction<K>) -> RationalFunction<K> {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num - &rhs.num, self.den.clone());
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<K: Scalar> Neg for RationalFunction<K> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl<K: Scalar> Mul for RationalFunction<K> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        (&self).mul(&rhs)
    }
}

impl<'a, K: Scalar> Mul<&'a RationalFunction<K>> for &RationalFunction<K> {
    type Output = RationalFunction<K>;
    fn mul(self, rhs: &'a RationalFunction<K>) -> RationalFunction<K> {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<K: Scalar> Div for RationalFunction<K> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        (&self).div(&rhs)
    }
}

impl<'a, K: Scalar> Div<&'a RationalFunction<K>> for &RationalFunction<K> {
    type Output = RationalFunction<K>;
    fn div(self, rhs: &'a RationalFunction<K>) -> RationalFunction<K> {
        let inv = rhs.inverse().expect("division by zero rational function");
        self.mul(&inv)
    }
}

impl<K: Scalar> Conjugate for RationalFunction<K> {
    fn conjugate(&self) -> Self {
        Self::new(self.num.conjugate(), self.den.conjugate())
    }
}

impl<K: Scalar> Ring for RationalFunction<K> {
    fn from_integer(n: i64) -> Self {
        Self::from_poly(Polynomial::from_integer(n))
    }
}

impl<K: Scalar> Scalar for RationalFunction<K> {
    fn try_inverse(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

impl<K: Scalar> fmt::Display for RationalFunction<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
