use std::cmp::Ordering;
use std::fmt;

/// The two formal variables.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    Xi,
    XiBar,
}

/// Power product xi^a * xibar^b.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    pub xi: u32,
    pub xibar: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { xi: 0, xibar: 0 };

    pub fn new(xi: u32, xibar: u32) -> Self {
        Self { xi, xibar }
    }

    pub fn var(v: Var) -> Self {
        match v {
            Var::Xi => Self::new(1, 0),
            Var::XiBar => Self::new(0, 1),
        }
    }

    pub fn degree(&self) -> u32 {
        self.xi + self.xibar
    }

    pub fn exponent(&self, v: Var) -> u32 {
        match v {
            Var::Xi => self.xi,
            Var::XiBar => self.xibar,
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            xi: self.xi.checked_add(rhs.xi).expect("monomial exponent overflow"),
            xibar: self
                .xibar
                .checked_add(rhs.xibar)
                .expect("monomial exponent overflow"),
        }
    }

    pub fn divides(&self, rhs: &Self) -> bool {
        self.xi <= rhs.xi && self.xibar <= rhs.xibar
    }

    /// rhs / self; requires `self.divides(rhs)`.
    pub fn div_into(&self, rhs: &Self) -> Self {
        Self {
            xi: rhs.xi - self.xi,
            xibar: rhs.xibar - self.xibar,
        }
    }

    /// Componentwise minimum, the gcd of two power products.
    pub fn meet(&self, rhs: &Self) -> Self {
        Self {
            xi: self.xi.min(rhs.xi),
            xibar: self.xibar.min(rhs.xibar),
        }
    }

    /// The sigma involution on power products: exchange xi and xibar.
    pub fn swapped(&self) -> Self {
        Self {
            xi: self.xibar,
            xibar: self.xi,
        }
    }
}

/// Graded lexicographic order with xi before xibar.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.xi.cmp(&other.xi))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.xi, self.xibar) {
            (0, 0) => write!(f, "1"),
            (a, 0) => write_power(f, "xi", a),
            (0, b) => write_power(f, "xibar", b),
            (a, b) => {
                write_power(f, "xi", a)?;
                write!(f, "*")?;
                write_power(f, "xibar", b)
            }
        }
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, name: &str, e: u32) -> fmt::Result {
    if e == 1 {
        write!(f, "{name}")
    } else {
        write!(f, "{name}^{e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let one = Monomial::ONE;
        let xi = Monomial::new(1, 0);
        let xibar = Monomial::new(0, 1);
        let xi2 = Monomial::new(2, 0);
        let xixibar = Monomial::new(1, 1);
        assert!(one < xibar && xibar < xi);
        assert!(xi < xixibar && xixibar < xi2);
    }

    #[test]
    fn display() {
        assert_eq!(Monomial::new(2, 1).to_string(), "xi^2*xibar");
        assert_eq!(Monomial::ONE.to_string(), "1");
    }
}
