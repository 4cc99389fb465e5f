//! Gaussian rationals: a + b i with exact rational a, b.

use super::{Conjugate, ScalarError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Exact complex number with rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// The imaginary unit i.
    pub fn i() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Rational value, if the imaginary part vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_real().then_some(&self.re)
    }

    /// Squared modulus re^2 + im^2 (a nonnegative rational).
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn try_inverse(&self) -> Result<Self, ScalarError> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self {
            re: &self.re * q,
            im: &self.im * q,
        }
    }

    pub fn eval_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }
}

pub(crate) fn ratio_to_f64(q: &BigRational) -> f64 {
    // ToPrimitive on BigRational is exact enough for our small heights.
    num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

impl Conjugate for GaussianRational {
    fn conjugate(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_rational(BigRational::one())
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl<'a> Add<&'a GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl<'a> Sub<&'a GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        (&self).mul(&rhs)
    }
}

impl<'a> Mul<&'a GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.try_inverse().expect("division by zero GaussianRational");
        (&self).mul(&inv)
    }
}

fn fmt_ratio(q: &BigRational) -> String {
    q.to_string()
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.im.is_zero() {
            return write!(f, "{}", fmt_ratio(&self.re));
        }
        let im_str = if self.im.is_one() {
            "i".to_string()
        } else if (-&self.im).is_one() {
            "-i".to_string()
        } else {
            format!("{}*i", fmt_ratio(&self.im))
        };
        if self.re.is_zero() {
            return write!(f, "{im_str}");
        }
        if self.im.is_negative() {
            let pos = -&self.im;
            let im_str = if pos.is_one() {
                "i".to_string()
            } else {
                format!("{}*i", fmt_ratio(&pos))
            };
            write!(f, "{} - {}", fmt_ratio(&self.re), im_str)
        } else {
            write!(f, "{} + {}", fmt_ratio(&self.re), im_str)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn inverse_of_one_plus_i() {
        // 1/(1+i) = (1-i)/2
        let z = GaussianRational::new(q(1, 1), q(1, 1));
        let inv = z.try_inverse().unwrap();
        assert_eq!(inv, GaussianRational::new(q(1, 2), q(-1, 2)));
        assert!((z * inv).is_one());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(
            GaussianRational::zero().try_inverse(),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn conjugation_negates_im() {
        let z = GaussianRational::new(q(2, 3), q(-5, 7));
        let c = z.conjugate();
        assert_eq!(c.re(), &q(2, 3));
        assert_eq!(c.im(), &q(5, 7));
        assert_eq!(c.conjugate(), z);
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussianRational::zero().to_string(), "0");
        assert_eq!(GaussianRational::from_integer(-3).to_string(), "-3");
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!(
            GaussianRational::new(q(1, 2), q(2, 3)).to_string(),
            "1/2 + 2/3*i"
        );
        assert_eq!(
            GaussianRational::new(q(1, 1), q(-1, 1)).to_string(),
            "1 - i"
        );
    }
}
