//! Recursive-descent parser for holomorphic seed expressions.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := '-' factor | power
//! power    := atom ('^' exponent)?
//! exponent := integer ('^' exponent)?          right-associative
//! atom     := rational | 'i' | 'sqrt' '(' integer ')' | 'xi' | '(' expr ')'
//! rational := integer ('/' integer)?
//! ```
//!
//! Precedence: `^` > unary `-` > `*` > binary `+`/`-`. The output is an
//! exact polynomial in xi; any `xibar` is rejected as non-holomorphic.

use cpspin::poly::Var;
use cpspin::scalar::{RadicalScalar, ScalarError};
use cpspin::{Poly, Rational};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("non-holomorphic seed: xibar at byte {pos}")]
    NonHolomorphic { pos: usize },
    #[error("negative exponent at byte {pos}")]
    NegativeExponent { pos: usize },
    #[error("at byte {pos}: {source}")]
    Scalar { pos: usize, source: ScalarError },
}

pub fn parse_seed_expression(text: &str) -> Result<Poly, ParseError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        if self.eat(b'-') {
            return Ok(self.factor()?.scalar_mul(&RadicalScalar::from_integer(-1)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if self.peek() == Some(b'-') {
            return Err(ParseError::NegativeExponent { pos: self.pos });
        }
        let base = self.integer("exponent")?;
        let base: u32 = base
            .try_into()
            .map_err(|_| self.err("exponent too large"))?;
        if self.eat(b'^') {
            let upper = self.exponent()?;
            return base
                .checked_pow(upper)
                .ok_or_else(|| self.err("exponent tower too large"));
        }
        Ok(base)
    }

    fn integer(&mut self, what: &str) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err(&format!("expected {what}")));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let value = text
            .parse::<u64>()
            .map_err(|_| self.err(&format!("{what} out of range")))?;
        self.skip_ws();
        Ok(value)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.eat(b'(');
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let numer = self.integer("integer")?;
                if self.eat(b'/') {
                    let pos = self.pos;
                    let denom = self.integer("denominator")?;
                    if denom == 0 {
                        return Err(ParseError::Syntax {
                            pos,
                            msg: "zero denominator".into(),
                        });
                    }
                    let q = Rational::new((numer as i64).into(), (denom as i64).into());
                    Ok(Poly::constant(RadicalScalar::from_rational(q)))
                } else {
                    Ok(Poly::constant(RadicalScalar::from_integer(numer as i64)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => self.identifier(),
            _ => Err(self.err("expected a value")),
        }
    }

    fn identifier(&mut self) -> Result<Poly, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let after_name = self.pos;
        self.skip_ws();
        match name {
            "xi" => Ok(Poly::variable(Var::Xi)),
            "xibar" => Err(ParseError::NonHolomorphic { pos: start }),
            "i" => Ok(Poly::constant(RadicalScalar::imaginary_unit())),
            "sqrt" => {
                if !self.eat(b'(') {
                    return Err(self.err("expected '(' after sqrt"));
                }
                let n = self.integer("radicand")?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                let value = RadicalScalar::sqrt_integer(n)
                    .map_err(|source| ParseError::Scalar { pos: start, source })?;
                Ok(Poly::constant(value))
            }
            _ => Err(ParseError::Syntax {
                pos: after_name,
                msg: format!("unknown identifier '{name}'"),
            }),
        }
    }
}

/// Parses a comma-separated list of component expressions.
pub fn parse_seed_vector(text: &str) -> Result<Vec<Poly>, ParseError> {
    text.split(',').map(parse_seed_expression).collect()
}

/// Parses a rational literal like "1/2" or "3".
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let poly = parse_seed_expression(text)?;
    poly.as_constant()
        .and_then(|c| c.as_rational())
        .ok_or(ParseError::Syntax {
            pos: 0,
            msg: format!("'{text}' is not a rational literal"),
        })
}
