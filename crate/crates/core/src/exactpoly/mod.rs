//! Exact sparse multivariate polynomials over the rationals.

pub(crate) mod modp;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use modp::PolyModP;
pub use parse::parse_poly;

pub type Rational = BigRational;

/// Exponent vector of a monomial.
///
/// Ordered graded-lexicographically: total degree first, then lexicographic
/// with `x1 > x2 > ... > xn`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(entries: Vec<u32>) -> Self {
        Exponent(entries)
    }

    pub fn zero(nvars: usize) -> Self {
        Exponent(vec![0; nvars])
    }

    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Exponent(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }

    pub fn dot(&self, v: &[i64]) -> i64 {
        self.0.iter().zip(v).map(|(&a, &w)| a as i64 * w).sum()
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&a| a as i64).collect()
    }

    /// Componentwise `self <= other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, if nonnegative.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Exponent)
    }
}

impl From<Vec<u32>> for Exponent {
    fn from(v: Vec<u32>) -> Self {
        Exponent(v)
    }
}

impl std::ops::Index<usize> for Exponent {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `nvars` variables with exact rational coefficients.
///
/// No stored coefficient is zero, so the zero polynomial is the empty map and
/// structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(Exponent::zero(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn monomial(exp: Exponent, c: Rational) -> Self {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { nvars, terms }
    }

    /// `x^exp` with coefficient 1.
    pub fn monic_monomial(exp: Vec<u32>) -> Self {
        Self::monomial(Exponent(exp), Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Exponent::unit(nvars, i), Rational::one())
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, got: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn support(&self) -> impl DoubleEndedIterator<Item = &Exponent> + '_ {
        self.terms.keys()
    }

    pub fn coeff(&self, e: &Exponent) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.leading_term().map(|(e, _)| e.degree())
    }

    fn check_nvars(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::NvarsMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_nvars(other)?;
        let mut out = Poly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.add(b), x * y);
            }
        }
        Ok(out)
    }

    pub fn arith(&self, op: ArithOp, other: &Poly) -> Result<Poly> {
        match op {
            ArithOp::Add => self.try_add(other),
            ArithOp::Sub => self.try_sub(other),
            ArithOp::Mul => self.try_mul(other),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    /// Multiplies by the monomial `x^e`.
    pub fn shift(&self, e: &Exponent) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(a, c)| (a.add(e), c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The terms whose exponent `b` satisfies `<v, b> = c`.
    ///
    /// With `c` equal to the minimum of `<v, .>` over the support this is the
    /// truncation of `self` to the face of its Newton polyhedron cut out by `v`.
    pub fn face_part(&self, v: &[i64], c: i64) -> Poly {
        self.filter_terms(|e| e.dot(v) == c)
    }

    pub fn filter_terms(&self, mut keep: impl FnMut(&Exponent) -> bool) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// `x_i * d/dx_i` applied to `self`; exponents are preserved.
    pub fn log_derivative(&self, i: usize) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[i] != 0)
                .map(|(e, c)| (e.clone(), c * Rational::from_integer(BigInt::from(e[i]))))
                .collect(),
        }
    }

    /// True iff for every variable `x_i` the restriction of `self` to the
    /// `x_i`-axis is nonzero, i.e. the support contains some `k * e_i`.
    pub fn axis_condition(&self) -> bool {
        (0..self.nvars)
            .all(|i| self.terms.keys().any(|e| e.0.iter().enumerate().all(|(j, &a)| j == i || a == 0)))
    }

    /// `min <v, b>` over the support.
    pub fn min_dot(&self, v: &[i64]) -> Option<i64> {
        self.terms.keys().map(|e| e.dot(v)).min()
    }

    pub fn mod_p(&self, prime: u64) -> Result<PolyModP> {
        PolyModP::reduce(self, prime)
    }

    /// Division with remainder by a single divisor under graded-lex order.
    ///
    /// The remainder has no term divisible by the leading monomial of
    /// `divisor`; it is zero iff `divisor` divides `self`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_nvars(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(Error::ZeroPolynomial)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quo = Poly::zero(self.nvars);
        let mut done = Poly::zero(self.nvars);
        while let Some((e, c)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            match e.checked_sub(&lm) {
                Some(s) => {
                    let q = c / &lc;
                    let t = Poly::monomial(s, q);
                    rem = rem.try_sub(&(&t * divisor))?;
                    quo = quo.try_add(&t)?;
                }
                None => {
                    rem.terms.remove(&e);
                    done.add_term(e, c);
                }
            }
        }
        Ok((quo, done))
    }

    pub fn is_divisible_by(&self, divisor: &Poly) -> Result<bool> {
        Ok(self.div_rem(divisor)?.1.is_zero())
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: point.len() });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &a) in point.iter().zip(&e.0) {
                t *= num_traits::pow(x.clone(), a as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Sets the last variable to zero and drops it.
    pub fn restrict_last_to_zero(&self) -> Poly {
        let n = self.nvars.saturating_sub(1);
        Poly {
            nvars: n,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.0.last() == Some(&0))
                .map(|(e, c)| (Exponent(e.0[..n].to_vec()), c.clone()))
                .collect(),
        }
    }

    /// Views `self` as a polynomial in one more variable (appended last).
    pub fn extend_vars(&self, extra: usize) -> Poly {
        Poly {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut v = e.0.clone();
                    v.extend(std::iter::repeat_n(0, extra));
                    (Exponent(v), c.clone())
                })
                .collect(),
        }
    }

    pub fn max_exponent(&self) -> u32 {
        self.terms.keys().flat_map(|e| e.0.iter().copied()).max().unwrap_or(0)
    }
}

impl Add for &Poly {
    type Output = Poly;
    /// Panics on mismatched variable counts; see [`Poly::try_add`].
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("nvars mismatch in add")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("nvars mismatch in sub")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("nvars mismatch in mul")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let mono: Vec<String> =
                e.0.iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 0)
                    .map(|(i, &p)| if p == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, p) })
                    .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write!(f, "{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    exp: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    nvars: usize,
    terms: Vec<TermJson>,
}

impl From<Poly> for PolyJson {
    fn from(p: Poly) -> Self {
        PolyJson {
            nvars: p.nvars,
            terms: p
                .terms
                .into_iter()
                .rev()
                .map(|(e, c)| TermJson { coeff: c.to_string(), exp: e.0 })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for Poly {
    type Error = Error;
    fn try_from(j: PolyJson) -> Result<Poly> {
        if j.nvars == 0 {
            return Err(Error::Precondition("nvars must be positive".into()));
        }
        let terms = j
            .terms
            .into_iter()
            .map(|t| {
                let c: Rational = t
                    .coeff
                    .trim()
                    .parse()
                    .map_err(|_| Error::Json(format!("bad coefficient {:?}", t.coeff)))?;
                Ok((Exponent(t.exp), c))
            })
            .collect::<Result<Vec<_>>>()?;
        Poly::from_terms(j.nvars, terms)
    }
}
