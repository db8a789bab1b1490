use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{Exponent, Poly};
use crate::error::{Error, Result};

/// A polynomial with coefficients in `F_p`, stored as residues in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyModP {
    prime: u64,
    nvars: usize,
    terms: Vec<(Exponent, u64)>,
}

fn residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl PolyModP {
    pub(crate) fn reduce(poly: &Poly, prime: u64) -> Result<Self> {
        let mut terms = Vec::new();
        for (e, c) in poly.terms() {
            let den = residue(c.denom(), prime);
            if den.is_zero() {
                return Err(Error::DenominatorDivisible { coeff: c.to_string(), prime });
            }
            let r = mul_mod(residue(c.numer(), prime), inv_mod(den, prime), prime);
            if r != 0 {
                terms.push((e.clone(), r));
            }
        }
        Ok(PolyModP { prime, nvars: poly.nvars(), terms })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Exponent, u64)] {
        &self.terms
    }

    pub fn coeff(&self, e: &Exponent) -> u64 {
        self.terms.iter().find(|(x, _)| x == e).map_or(0, |(_, c)| *c)
    }

    pub fn eval(&self, point: &[u64]) -> u64 {
        let p = self.prime;
        self.terms.iter().fold(0, |acc, (e, c)| {
            let t =
                e.as_slice().iter().zip(point).fold(*c, |t, (&a, &x)| mul_mod(t, pow_mod(x, a as u64, p), p));
            (acc + t) % p
        })
    }
}
