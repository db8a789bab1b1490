use num_bigint::BigInt;
use num_traits::Zero;

use super::{Exponent, Poly, Rational};
use crate::error::{Error, Result};

/// Parses a polynomial in the variables `x1..x{nvars}`.
///
/// Accepts sums and differences of products of rational constants (`3`,
/// `-1/2`), variables with nonnegative integer powers (`x2^3`) and
/// parenthesized subexpressions, which may also be raised to powers.
pub fn parse_poly(text: &str, nvars: usize) -> Result<Poly> {
    if nvars == 0 {
        return Err(Error::Precondition("nvars must be positive".into()));
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0, nvars };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        if self.peek() == Some(b'-') {
            return Err(Error::NegativeExponent { pos: self.pos });
        }
        let k = self.integer()?;
        let k: u32 = k.try_into().map_err(|_| self.err("exponent too large"))?;
        Ok(base.pow(k))
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                let at = self.pos;
                self.pos += 1;
                if !self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.err("expected variable index after 'x'"));
                }
                let idx = self.integer()?;
                let idx: usize = idx.try_into().unwrap_or(usize::MAX);
                if idx == 0 || idx > self.nvars {
                    let _ = at;
                    return Err(Error::VariableOutOfRange { index: idx, nvars: self.nvars });
                }
                Ok(Poly::monomial(Exponent::unit(self.nvars, idx - 1), Rational::from_integer(1.into())))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        self.pos = save;
                        return Err(self.err("expected integer denominator"));
                    }
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    return Ok(Poly::constant(self.nvars, Rational::new(num, den)));
                }
                Ok(Poly::constant(self.nvars, Rational::from_integer(num)))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
