use super::monomial::{Monomial, Var};
use crate::scalar::{Conjugate, RadicalScalar, Ring, Scalar};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Bivariate polynomial with coefficients in K, kept in canonical form:
/// terms sorted graded-lexicographically, no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<K> {
    terms: BTreeMap<Monomial, K>,
}

impl<K: Ring> Default for Polynomial<K> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ring> Polynomial<K> {
    pub fn constant(c: K) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::ONE, c);
        }
        Self { terms }
    }

    pub fn variable(v: Var) -> Self {
        Self::term(Monomial::var(v), K::one())
    }

    pub fn term(m: Monomial, c: K) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, K)>>(iter: I) -> Self {
        let mut p = Self::default();
        for (m, c) in iter {
            p.accumulate(m, c);
        }
        p
    }

    /// 1 + xi*xibar, the ubiquitous chain denominator.
    pub fn one_plus_xixibar() -> Self {
        Self::from_terms([(Monomial::ONE, K::one()), (Monomial::new(1, 1), K::one())])
    }

    fn accumulate(&mut self, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &K)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(v))
            .max()
            .unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn as_constant(&self) -> Option<K> {
        if self.is_zero() {
            Some(K::zero())
        } else if self.is_constant() {
            self.terms.get(&Monomial::ONE).cloned()
        } else {
            None
        }
    }

    /// No xibar appears in any term.
    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|m| m.xibar == 0)
    }

    /// Leading (graded-lex greatest) term.
    pub fn leading(&self) -> Option<(Monomial, &K)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&K> {
        self.terms.get(m)
    }

    pub fn map_coefficients<F: Fn(&K) -> K>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn scalar_mul(&self, k: &K) -> Self {
        if k.is_zero() {
            return Self::default();
        }
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, c.clone() * k.clone())))
    }

    pub fn mul_term(&self, m: &Monomial, c: &K) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        Self::from_terms(self.terms.iter().map(|(t, k)| (t.mul(m), k.clone() * c.clone())))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(K::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative treating xi and xibar as independent.
    pub fn wirtinger(&self, v: Var) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(v);
            if e == 0 {
                return None;
            }
            let lowered = match v {
                Var::Xi => Monomial::new(m.xi - 1, m.xibar),
                Var::XiBar => Monomial::new(m.xi, m.xibar - 1),
            };
            Some((lowered, c.clone() * K::from_integer(e as i64)))
        }))
    }

    /// Componentwise-minimum power product dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        self.terms
            .keys()
            .fold(None, |acc: Option<Monomial>, m| {
                Some(acc.map_or(*m, |a| a.meet(m)))
            })
            .unwrap_or(Monomial::ONE)
    }

    /// Divides every term by m; requires m to divide the content.
    pub fn divide_monomial(&self, m: &Monomial) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| {
                    debug_assert!(m.divides(t));
                    (m.div_into(t), c.clone())
                })
                .collect(),
        }
    }
}

impl<K: Scalar> Polynomial<K> {
    /// Exact quotient self / divisor, or None when the division leaves a
    /// remainder. Single-divisor multivariate division: over a graded order
    /// the leading term of an exact multiple is always divisible, so the
    /// cancellation loop terminates with remainder zero iff divisor | self.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (dm, dc) = divisor.leading()?;
        let dc_inv = dc.try_inverse()?;
        if self.is_zero() {
            return Some(Self::default());
        }
        let mut rem = self.clone();
        let mut quot = Self::default();
        while let Some((m, c)) = rem.leading() {
            if !dm.divides(&m) {
                return None;
            }
            let qm = dm.div_into(&m);
            let qc = c.clone() * dc_inv.clone();
            rem = &rem - &divisor.mul_term(&qm, &qc);
            quot.accumulate(qm, qc);
        }
        Some(quot)
    }
}

impl Polynomial<RadicalScalar> {
    pub fn eval_c64(&self, xi: crate::C64, xibar: crate::C64) -> crate::C64 {
        self.terms
            .iter()
            .map(|(m, c)| c.eval_c64() * xi.powu(m.xi) * xibar.powu(m.xibar))
            .sum()
    }
}

impl<K: Ring> Zero for Polynomial<K> {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<K: Ring> One for Polynomial<K> {
    fn one() -> Self {
        Self::constant(K::one())
    }
    fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::ONE)
                .is_some_and(|c| c.is_one())
    }
}

impl<K: Ring> Add for Polynomial<K> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.accumulate(m, c);
        }
        self
    }
}

impl<'a, K: Ring> Add<&'a Polynomial<K>> for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn add(self, rhs: &'a Polynomial<K>) -> Polynomial<K> {
        self.clone() + rhs.clone()
    }
}

impl<K: Ring> Sub for Polynomial<K> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.accumulate(m, c.neg());
        }
        self
    }
}

impl<'a, K: Ring> Sub<&'a Polynomial<K>> for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn sub(self, rhs: &'a Polynomial<K>) -> Polynomial<K> {
        self.clone() - rhs.clone()
    }
}

impl<K: Ring> Neg for Polynomial<K> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(m, c)| (m, c.neg())).collect(),
        }
    }
}

impl<K: Ring> Mul for Polynomial<K> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        (&self).mul(&rhs)
    }
}

impl<'a, K: Ring> Mul<&'a Polynomial<K>> for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn mul(self, rhs: &'a Polynomial<K>) -> Polynomial<K> {
        let mut out = Polynomial::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.accumulate(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<K: Ring> Conjugate for Polynomial<K> {
    /// The sigma involution: swap xi with xibar and conjugate every
    /// coefficient. Composed with transposition this is the Hermitian
    /// adjoint on matrices of polynomials.
    fn conjugate(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.swapped(), c.conjugate()))
                .collect(),
        }
    }
}

impl<K: Ring> Ring for Polynomial<K> {
    fn from_integer(n: i64) -> Self {
        Self::constant(K::from_integer(n))
    }
}

impl<K: Ring> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let piece = render_term(m, c);
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

fn render_term<K: Ring>(m: &Monomial, c: &K) -> String {
    let coeff = c.to_string();
    if *m == Monomial::ONE {
        return if coeff.contains(' ') {
            format!("({coeff})")
        } else {
            coeff
        };
    }
    if c.is_one() {
        return m.to_string();
    }
    if (c.clone().neg()).is_one() {
        return format!("-{m}");
    }
    if coeff.contains(' ') {
        format!("({coeff})*{m}")
    } else {
        format!("{coeff}*{m}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Poly;

    fn xi() -> Poly {
        Poly::variable(Var::Xi)
    }

    fn xibar() -> Poly {
        Poly::variable(Var::XiBar)
    }

    fn int(n: i64) -> Poly {
        Poly::from_integer(n)
    }

    #[test]
    fn wirtinger_power_rule() {
        // d/dxi (xi^2 xibar) = 2 xi xibar
        let p = &(&xi() * &xi()) * &xibar();
        let d = p.wirtinger(Var::Xi);
        let expected = (&xi() * &xibar()).scalar_mul(&RadicalScalar::from_integer(2));
        assert_eq!(d, expected);
    }

    #[test]
    fn mixed_partials_commute() {
        let p = &(&xi() * &xi()) * &(&xibar() * &xibar()) + (&(&xi() * &xibar()) + &int(3));
        assert_eq!(
            p.wirtinger(Var::Xi).wirtinger(Var::XiBar),
            p.wirtinger(Var::XiBar).wirtinger(Var::Xi)
        );
    }

    #[test]
    fn sigma_involution_swaps_and_conjugates() {
        let p = xi().scalar_mul(&RadicalScalar::imaginary_unit());
        let q = p.conjugate();
        let expected = xibar().scalar_mul(&RadicalScalar::imaginary_unit().neg());
        assert_eq!(q, expected);
        assert_eq!(q.conjugate(), p);
    }

    #[test]
    fn exact_division() {
        // (1 - xi^2 xibar^2) / (1 + xi xibar) = 1 - xi xibar
        let opx = Poly::one_plus_xixibar();
        let num = &int(1) - &(&(&xi() * &xi()) * &(&xibar() * &xibar()));
        let q = num.div_exact(&opx).unwrap();
        let expected = &int(1) - &(&xi() * &xibar());
        assert_eq!(q, expected);
        // and a non-divisible case
        assert!(xi().div_exact(&opx).is_none());
    }

    #[test]
    fn content_extraction() {
        let p = &(&xi() * &xibar()) * &(&xi() + &(&xi() * &xibar()));
        let content = p.monomial_content();
        assert_eq!(content, Monomial::new(2, 1));
        let reduced = p.divide_monomial(&content);
        assert_eq!(reduced, &int(1) + &xibar());
    }

    #[test]
    fn display_graded_lex_descending() {
        let p = &(&xi() * &xibar()) + &(&int(1) + &xi());
        assert_eq!(p.to_string(), "xi*xibar + xi + 1");
    }
}
