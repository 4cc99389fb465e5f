use super::LinalgError;
use crate::scalar::Ring;
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense column vector.
#[derive(Clone, PartialEq, Debug)]
pub struct Vector<T> {
    entries: Vec<T>,
}

impl<T: Ring> Vector<T> {
    pub fn new(entries: Vec<T>) -> Self {
        Self { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: vec![T::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn at(&self, i: usize) -> &T {
        &self.entries[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn map<F: Fn(&T) -> T>(&self, f: F) -> Self {
        Self {
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<E, F: Fn(&T) -> Result<T, E>>(&self, f: F) -> Result<Self, E> {
        Ok(Self {
            entries: self.entries.iter().map(f).collect::<Result<_, E>>()?,
        })
    }

    pub fn scalar_mul(&self, k: &T) -> Self {
        self.map(|e| e.clone() * k.clone())
    }

    /// Hermitian inner product u† . v = sum conj(u_i) v_i.
    pub fn hermitian_dot(&self, rhs: &Self) -> Result<T, LinalgError> {
        if self.dim() != rhs.dim() {
            return Err(dim_err("hermitian_dot", self.dim(), rhs.dim()));
        }
        Ok(self
            .entries
            .iter()
            .zip(&rhs.entries)
            .fold(T::zero(), |acc, (u, v)| acc + u.conjugate() * v.clone()))
    }

    /// Outer product u ⊗ v†: entry (i, j) = u_i conj(v_j).
    pub fn outer(&self, rhs: &Self) -> Matrix<T> {
        Matrix::from_fn(self.dim(), rhs.dim(), |i, j| {
            self.entries[i].clone() * rhs.entries[j].conjugate()
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.dim() != rhs.dim() {
            return Err(dim_err("vector add", self.dim(), rhs.dim()));
        }
        Ok(Self {
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.dim() != rhs.dim() {
            return Err(dim_err("vector sub", self.dim(), rhs.dim()));
        }
        Ok(Self {
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }
}

fn dim_err(op: &'static str, l: usize, r: usize) -> LinalgError {
    LinalgError::DimensionMismatch {
        op,
        left: l.to_string(),
        right: r.to_string(),
    }
}

fn shape_err(op: &'static str, a: &(usize, usize), b: &(usize, usize)) -> LinalgError {
    LinalgError::DimensionMismatch {
        op,
        left: format!("{}x{}", a.0, a.1),
        right: format!("{}x{}", b.0, b.1),
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn from_fn<F: FnMut(usize, usize) -> T>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::DimensionMismatch {
                op: "from_rows",
                left: c.to_string(),
                right: "ragged".into(),
            });
        }
        Ok(Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.entries[i * self.cols + j]
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.entries.iter()
    }

    pub fn map<F: Fn(&T) -> T>(&self, f: F) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn map_to<U: Ring, F: Fn(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<E, F: Fn(&T) -> Result<T, E>>(&self, f: F) -> Result<Self, E> {
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<_, E>>()?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.shape() != rhs.shape() {
            return Err(shape_err("matrix add", &self.shape(), &rhs.shape()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.shape() != rhs.shape() {
            return Err(shape_err("matrix sub", &self.shape(), &rhs.shape()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(shape_err("matrix mul", &self.shape(), &rhs.shape()));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self.at(i, k).clone() * rhs.at(k, j).clone();
            }
            acc
        }))
    }

    pub fn mul_vector(&self, v: &Vector<T>) -> Result<Vector<T>, LinalgError> {
        if self.cols != v.dim() {
            return Err(dim_err("matrix-vector mul", self.cols, v.dim()));
        }
        Ok(Vector::new(
            (0..self.rows)
                .map(|i| {
                    let mut acc = T::zero();
                    for k in 0..self.cols {
                        acc = acc + self.at(i, k).clone() * v.at(k).clone();
                    }
                    acc
                })
                .collect(),
        ))
    }

    pub fn scalar_mul(&self, k: &T) -> Self {
        self.map(|e| e.clone() * k.clone())
    }

    pub fn trace(&self) -> Result<T, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((0..self.rows).fold(T::zero(), |acc, i| acc + self.at(i, i).clone()))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// Hermitian conjugate: transpose followed by the entry involution.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).conjugate())
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.dagger()
    }

    pub fn commutator(&self, rhs: &Self) -> Result<Self, LinalgError> {
        let ab = self.try_mul(rhs)?;
        let ba = rhs.try_mul(self)?;
        ab.try_sub(&ba)
    }
}

impl<'a, T: Ring> Add<&'a Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        self.try_add(rhs).expect("matrix add shape mismatch")
    }
}

impl<'a, T: Ring> Sub<&'a Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        self.try_sub(rhs).expect("matrix sub shape mismatch")
    }
}

impl<'a, T: Ring> Mul<&'a Matrix<T>> for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        self.try_mul(rhs).expect("matrix mul shape mismatch")
    }
}

impl<T: Ring> Neg for Matrix<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.into_iter().map(Neg::neg).collect(),
        }
    }
}

impl<T: Ring> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;
    use crate::{Conjugate, MatrixRf, Rf, VectorRf};
    use num_traits::One;

    fn xi() -> Rf {
        Rf::variable(Var::Xi)
    }

    fn xibar() -> Rf {
        Rf::variable(Var::XiBar)
    }

    #[test]
    fn outer_product_of_seed() {
        // (1, xi) ⊗ (1, xi)† = [[1, xibar], [xi, xi xibar]]
        let f = VectorRf::new(vec![Rf::one(), xi()]);
        let m = f.outer(&f);
        let expected = MatrixRf::from_rows(vec![
            vec![Rf::one(), xibar()],
            vec![xi(), &xi() * &xibar()],
        ])
        .unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn commutator_with_identity_vanishes() {
        let m = MatrixRf::from_rows(vec![
            vec![xi(), Rf::one()],
            vec![xibar(), &xi() * &xibar()],
        ])
        .unwrap();
        let id = MatrixRf::identity(2);
        assert!(id.commutator(&m).unwrap().is_zero());
    }

    #[test]
    fn dagger_is_an_involution() {
        let m = MatrixRf::from_rows(vec![
            vec![Rf::from_scalar(crate::RadicalScalar::imaginary_unit()), xi()],
            vec![xibar(), Rf::one()],
        ])
        .unwrap();
        assert_eq!(m.dagger().dagger(), m);
        assert_eq!(*m.dagger().at(1, 0), xi().conjugate());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = MatrixRf::zeros(2, 3);
        let b = MatrixRf::zeros(2, 3);
        assert!(matches!(
            a.try_mul(&b),
            Err(LinalgError::DimensionMismatch { .. })
        ));
        assert!(a.try_add(&b).is_ok());
    }
}
