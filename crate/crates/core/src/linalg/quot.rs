use super::matrix::Matrix;
use super::LinalgError;
use crate::poly::{degree_cap, Monomial, Polynomial, RationalFunction, SymbolicError, Var};
use crate::scalar::{Conjugate, Scalar};
use num_traits::{One, Zero};
use std::ops::Neg;

/// Matrix of polynomials over a single polynomial denominator.
///
/// Every matrix produced by the solution chain shares one denominator across
/// its entries; carrying that factor once instead of per entry keeps the
/// exact recurrences, commutators and minimal-polynomial products at
/// polynomial (not quadratic-in-denominator) cost. Converts losslessly to and
/// from the per-entry [`RationalFunction`] form at API boundaries.
#[derive(Clone, Debug)]
pub struct QuotMatrix<K: Scalar> {
    nums: Matrix<Polynomial<K>>,
    den: Polynomial<K>,
}

impl<K: Scalar> QuotMatrix<K> {
    pub fn new(nums: Matrix<Polynomial<K>>, den: Polynomial<K>) -> Self {
        assert!(!den.is_zero(), "quotient matrix with zero denominator");
        let mut q = Self { nums, den };
        q.reduce();
        q
    }

    pub fn identity(n: usize) -> Self {
        Self {
            nums: Matrix::identity(n),
            den: Polynomial::one(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            nums: Matrix::zeros(rows, cols),
            den: Polynomial::one(),
        }
    }

    pub fn from_matrix(m: &Matrix<RationalFunction<K>>) -> Self {
        // Collect the structurally distinct denominators; the common
        // denominator is their product.
        let mut distinct: Vec<Polynomial<K>> = Vec::new();
        let mut index = Vec::with_capacity(m.rows() * m.cols());
        for e in m.iter() {
            let d = e.den();
            let idx = match distinct.iter().position(|x| x == d) {
                Some(i) => i,
                None => {
                    distinct.push(d.clone());
                    distinct.len() - 1
                }
            };
            index.push(idx);
        }
        let den = distinct
            .iter()
            .fold(Polynomial::<K>::one(), |acc, d| &acc * d);
        let mut multipliers = Vec::with_capacity(distinct.len());
        for i in 0..distinct.len() {
            let m = distinct
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(Polynomial::<K>::one(), |acc, (_, d)| &acc * d);
            multipliers.push(m);
        }
        let mut k = 0;
        let nums = Matrix::from_fn(m.rows(), m.cols(), |i, j| {
            let mult = &multipliers[index[k]];
            k += 1;
            m.at(i, j).num() * mult
        });
        Self::new(nums, den)
    }

    pub fn to_matrix(&self) -> Matrix<RationalFunction<K>> {
        self.nums
            .map_to(|n| RationalFunction::new(n.clone(), self.den.clone()))
    }

    pub fn entry(&self, i: usize, j: usize) -> RationalFunction<K> {
        RationalFunction::new(self.nums.at(i, j).clone(), self.den.clone())
    }

    pub fn nums(&self) -> &Matrix<Polynomial<K>> {
        &self.nums
    }

    pub fn den(&self) -> &Polynomial<K> {
        &self.den
    }

    pub fn shape(&self) -> (usize, usize) {
        self.nums.shape()
    }

    pub fn is_zero(&self) -> bool {
        self.nums.is_zero()
    }

    fn reduce(&mut self) {
        if self.nums.is_zero() {
            self.den = Polynomial::one();
            return;
        }
        // Common monomial content across all numerators and the denominator.
        let mut content = self.den.monomial_content();
        for e in self.nums.iter() {
            if !e.is_zero() {
                content = content.meet(&e.monomial_content());
            }
            if content == Monomial::ONE {
                break;
            }
        }
        if content != Monomial::ONE {
            self.nums = self.nums.map(|e| e.divide_monomial(&content));
            self.den = self.den.divide_monomial(&content);
        }
        // Cancel common powers of the chain denominator.
        let opx = Polynomial::one_plus_xixibar();
        self.cancel_factor(&opx);
        // Full cancellation when the denominator divides every numerator.
        if !self.den.is_one() {
            if let Some(divided) = self.try_divide_all(&self.den.clone()) {
                self.nums = divided;
                self.den = Polynomial::one();
            }
        }
        // Monic denominator.
        if let Some((_, lc)) = self.den.leading() {
            if !lc.is_one() {
                let inv = lc
                    .try_inverse()
                    .expect("nonzero leading coefficient in a field");
                self.nums = self.nums.map(|e| e.scalar_mul(&inv));
                self.den = self.den.scalar_mul(&inv);
            }
        }
    }

    fn try_divide_all(&self, f: &Polynomial<K>) -> Option<Matrix<Polynomial<K>>> {
        let mut out = Vec::with_capacity(self.nums.rows() * self.nums.cols());
        for e in self.nums.iter() {
            out.push(e.div_exact(f)?);
        }
        let mut it = out.into_iter();
        Some(Matrix::from_fn(self.nums.rows(), self.nums.cols(), |_, _| {
            it.next().unwrap()
        }))
    }

    /// Cancels as many powers of `f` as divide both the denominator and all
    /// numerators.
    pub fn cancel_factor(&mut self, f: &Polynomial<K>) {
        if f.is_one() || f.is_zero() {
            return;
        }
        loop {
            if self.den.is_one() {
                return;
            }
            let Some(new_den) = self.den.div_exact(f) else {
                return;
            };
            let Some(new_nums) = self.try_divide_all(f) else {
                return;
            };
            self.den = new_den;
            self.nums = new_nums;
        }
    }

    fn check_cap(&self, extra: u32) -> Result<(), SymbolicError> {
        let cap = degree_cap();
        let degree = self.den.degree().max(
            self.nums
                .iter()
                .map(Polynomial::degree)
                .max()
                .unwrap_or(0),
        ) + extra;
        if degree > cap {
            Err(SymbolicError::DegreeOverflow { degree, cap })
        } else {
            Ok(())
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.den == rhs.den {
            return Ok(Self::new(self.nums.try_add(&rhs.nums)?, self.den.clone()));
        }
        let left = self.nums.map(|e| e * &rhs.den);
        let right = rhs.nums.map(|e| e * &self.den);
        Ok(Self::new(left.try_add(&right)?, &self.den * &rhs.den))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.den == rhs.den {
            return Ok(Self::new(self.nums.try_sub(&rhs.nums)?, self.den.clone()));
        }
        let left = self.nums.map(|e| e * &rhs.den);
        let right = rhs.nums.map(|e| e * &self.den);
        Ok(Self::new(left.try_sub(&right)?, &self.den * &rhs.den))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        Ok(Self::new(
            self.nums.try_mul(&rhs.nums)?,
            &self.den * &rhs.den,
        ))
    }

    pub fn commutator(&self, rhs: &Self) -> Result<Self, LinalgError> {
        // Shared denominator: both products carry den_a * den_b.
        let ab = self.nums.try_mul(&rhs.nums)?;
        let ba = rhs.nums.try_mul(&self.nums)?;
        Ok(Self::new(ab.try_sub(&ba)?, &self.den * &rhs.den))
    }

    pub fn neg(&self) -> Self {
        Self {
            nums: self.nums.map(|e| e.clone().neg()),
            den: self.den.clone(),
        }
    }

    pub fn scale_scalar(&self, k: &K) -> Self {
        Self::new(self.nums.map(|e| e.scalar_mul(k)), self.den.clone())
    }

    pub fn scale_rf(&self, k: &RationalFunction<K>) -> Self {
        Self::new(self.nums.map(|e| e * k.num()), &self.den * k.den())
    }

    pub fn trace(&self) -> Result<RationalFunction<K>, LinalgError> {
        Ok(RationalFunction::new(
            self.nums.trace()?,
            self.den.clone(),
        ))
    }

    pub fn dagger(&self) -> Self {
        Self::new(self.nums.dagger(), self.den.conjugate())
    }

    /// Value-level equality by entrywise cross-multiplication.
    pub fn equiv(&self, rhs: &Self) -> bool {
        if self.shape() != rhs.shape() {
            return false;
        }
        let (r, c) = self.shape();
        for i in 0..r {
            for j in 0..c {
                if self.nums.at(i, j) * &rhs.den != rhs.nums.at(i, j) * &self.den {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_hermitian(&self) -> bool {
        self.dagger().equiv(self)
    }

    /// Formal partial derivative of every entry, sharing the quotient rule
    /// across the common denominator.
    pub fn wirtinger(&self, v: Var) -> Result<Self, SymbolicError> {
        self.check_cap(self.den.degree())?;
        if self.den.is_one() {
            return Ok(Self {
                nums: self.nums.map(|e| e.wirtinger(v)),
                den: Polynomial::one(),
            });
        }
        let dden = self.den.wirtinger(v);
        let nums = self
            .nums
            .map(|e| &(&e.wirtinger(v) * &self.den) - &(e * &dden));
        Ok(Self::new(nums, &self.den * &self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Ring;
    use crate::{MatrixRf, Poly, QuotMatrixRs, RadicalScalar, Rf};

    fn xi() -> Poly {
        Poly::variable(Var::Xi)
    }

    fn xibar() -> Poly {
        Poly::variable(Var::XiBar)
    }

    fn opx() -> Poly {
        Poly::one_plus_xixibar()
    }

    fn p0() -> QuotMatrixRs {
        // [[1, xibar],[xi, xi xibar]]/(1+xi xibar): the N=2 seed projector
        let nums = Matrix::from_rows(vec![
            vec![Poly::one(), xibar()],
            vec![xi(), &xi() * &xibar()],
        ])
        .unwrap();
        QuotMatrixRs::new(nums, opx())
    }

    #[test]
    fn round_trip_through_rational_matrix() {
        let q = p0();
        let m: MatrixRf = q.to_matrix();
        let back = QuotMatrixRs::from_matrix(&m);
        assert!(q.equiv(&back));
    }

    #[test]
    fn projector_is_idempotent_and_hermitian() {
        let p = p0();
        let p2 = p.mul(&p).unwrap();
        assert!(p2.equiv(&p));
        assert!(p.is_hermitian());
        assert!(p.trace().unwrap().is_one());
    }

    #[test]
    fn cancel_factor_strips_common_powers() {
        let nums = Matrix::from_rows(vec![
            vec![&opx() * &xi(), &opx() * &opx()],
            vec![opx(), &opx() * &xibar()],
        ])
        .unwrap();
        let mut q = QuotMatrixRs::new(nums, &opx() * &opx());
        q.cancel_factor(&opx());
        assert!(q.den().is_one() || q.den().degree() < 4);
        // value unchanged
        let direct = QuotMatrixRs::new(
            Matrix::from_rows(vec![
                vec![xi(), opx()],
                vec![Poly::one(), xibar()],
            ])
            .unwrap(),
            opx(),
        );
        assert!(q.equiv(&direct));
    }

    #[test]
    fn mixed_denominators_combine() {
        let a = MatrixRf::from_rows(vec![vec![
            Rf::new(Poly::one(), opx()),
            Rf::from_scalar(RadicalScalar::from_integer(2)),
        ]])
        .unwrap();
        let q = QuotMatrixRs::from_matrix(&a);
        assert!(q.entry(0, 0).try_equal(&Rf::new(Poly::one(), opx())).unwrap());
        assert!(q
            .entry(0, 1)
            .try_equal(&Rf::from_integer(2))
            .unwrap());
    }
}
