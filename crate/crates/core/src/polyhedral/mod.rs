//! Newton polyhedra and the polyhedral constructions built on them.

mod dd;
mod delta1;
mod enumerate;
mod newton;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::exactpoly::{Exponent, Rational};

pub use dd::dd_facets;
pub use delta1::{build_delta1, Delta1Region};
pub use enumerate::{enumerate_complement, DEFAULT_ENUMERATION_CAP};
pub use newton::{newton_polyhedron, CompactFace, NewtonPolyhedron};

/// `{r : <normal, r> >= height}` with a primitive nonnegative normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HalfSpace {
    pub normal: Vec<i64>,
    pub height: i64,
}

impl HalfSpace {
    /// Compact facets of a Newton polyhedron are exactly those whose normal
    /// is strictly positive.
    pub fn is_compact(&self) -> bool {
        self.normal.iter().all(|&x| x > 0)
    }

    pub fn coordinate_axis(&self) -> Option<usize> {
        let mut nz = self.normal.iter().enumerate().filter(|(_, &x)| x != 0);
        match (nz.next(), nz.next()) {
            (Some((i, 1)), None) if self.height == 0 => Some(i),
            _ => None,
        }
    }

    pub fn value(&self, b: &[i64]) -> i64 {
        crate::linalg::dot(&self.normal, b)
    }
}

/// A dilation factor `a >= 0` kept as an exact fraction, with a machine-size
/// fast path for lattice-point tests.
#[derive(Clone, Debug)]
pub(crate) struct Dilation {
    exact: Rational,
    small: Option<(i128, i128)>,
}

impl Dilation {
    pub(crate) fn new(a: &Rational) -> Self {
        let small = match (a.numer().to_i64(), a.denom().to_i64()) {
            (Some(n), Some(d)) => Some((n as i128, d as i128)),
            _ => None,
        };
        Dilation { exact: a.clone(), small }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.exact.is_zero()
    }

    /// `value >= a * height`, by cleared denominators.
    pub(crate) fn clears(&self, value: i64, height: i64) -> bool {
        match self.small {
            Some((n, d)) => value as i128 * d >= n * height as i128,
            None => BigInt::from(value) * self.exact.denom() >= self.exact.numer() * BigInt::from(height),
        }
    }

    pub(crate) fn exact(&self) -> &Rational {
        &self.exact
    }
}

pub(crate) fn contains_lattice_dil<R: Region + ?Sized>(r: &R, b: &[i64], dil: &Dilation) -> bool {
    b.iter().all(|&x| x >= 0) && (dil.is_zero() || r.cuts().iter().all(|h| dil.clears(h.value(b), h.height)))
}

/// A polyhedron of the form `{r >= 0 : <v, r> >= c for each cut}` whose cuts
/// all have positive height, so that dilation by `a` scales every height.
pub trait Region {
    fn nvars(&self) -> usize;

    /// Inequalities with positive height. Cuts with height 0 and nonnegative
    /// normal hold on the whole orthant and are omitted.
    fn cuts(&self) -> &[HalfSpace];

    /// Is the lattice point `b` (assumed `>= 0`) in `a * region`?
    fn contains_lattice(&self, b: &[i64], a: &Rational) -> bool {
        contains_lattice_dil(self, b, &Dilation::new(a))
    }

    fn contains_exponent(&self, b: &Exponent, a: &Rational) -> bool {
        self.contains_lattice(&b.to_i64(), a)
    }

    /// Membership of a rational point in `a * region`; `0 * region` is the
    /// closed orthant.
    fn member(&self, point: &[Rational], a: &Rational) -> crate::Result<bool> {
        if point.len() != self.nvars() {
            return Err(crate::Error::DimensionMismatch { expected: self.nvars(), got: point.len() });
        }
        if point.iter().any(|x| x < &Rational::zero()) {
            return Ok(false);
        }
        Ok(self.cuts().iter().all(|h| {
            let v: Rational =
                h.normal.iter().zip(point).map(|(&w, x)| x * Rational::from_integer(w.into())).sum();
            v >= a * Rational::from_integer(h.height.into())
        }))
    }

    /// `max {a >= 0 : b in a * region}` = `min <v, b> / c` over the cuts.
    fn filtration_value(&self, b: &Exponent) -> Rational {
        self.cuts()
            .iter()
            .map(|h| Rational::new(b.dot(&h.normal).into(), h.height.into()))
            .min()
            .expect("region has at least one cut")
    }
}
