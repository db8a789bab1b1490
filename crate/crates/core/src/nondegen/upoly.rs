//! Dense univariate polynomials over the rationals, coefficient `i` of `u^i`.

use num_traits::Zero;

use crate::exactpoly::Rational;

pub(crate) type UPoly = Vec<Rational>;

pub(crate) fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub(crate) fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn derivative(p: &[Rational]) -> UPoly {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(i.into())).collect())
}

pub(crate) fn rem(a: &[Rational], b: &[Rational]) -> UPoly {
    let db = degree(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let q = &r[dr] / &lead;
        let shift = dr - db;
        for (i, c) in b.iter().enumerate().take(db + 1) {
            r[i + shift] = &r[i + shift] - &q * c;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn monic(p: UPoly) -> UPoly {
    match degree(&p) {
        None => p,
        Some(d) => {
            let l = p[d].clone();
            p.into_iter().map(|c| c / &l).collect()
        }
    }
}

pub(crate) fn gcd(a: &[Rational], b: &[Rational]) -> UPoly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while degree(&y).is_some() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    monic(x)
}

/// Removes factors of `u`.
pub(crate) fn strip_u(p: UPoly) -> UPoly {
    let k = p.iter().position(|c| !c.is_zero()).unwrap_or(0);
    p.into_iter().skip(k).collect()
}

#[cfg(test)]
pub(crate) fn eval(p: &[Rational], u: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * u + c)
}

pub(crate) fn is_constant(p: &[Rational]) -> bool {
    degree(p).is_none_or(|d| d == 0)
}

pub(crate) fn scale_add(a: &[Rational], sa: &Rational, b: &[Rational], sb: &Rational) -> UPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).map_or(Rational::zero(), |c| c * sa);
                let y = b.get(i).map_or(Rational::zero(), |c| c * sb);
                x + y
            })
            .collect(),
    )
}

/// `u * p`.
pub(crate) fn shift_up(p: &[Rational]) -> UPoly {
    if p.is_empty() {
        return Vec::new();
    }
    std::iter::once(Rational::zero()).chain(p.iter().cloned()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i64]) -> UPoly {
        v.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    #[test]
    fn gcd_of_square() {
        // (u+1)^2 and 2(u+1)
        let q = r(&[1, 2, 1]);
        let g = gcd(&q, &derivative(&q));
        assert_eq!(g, r(&[1, 1]));
        assert!(is_constant(&gcd(&r(&[1, 0, 1]), &r(&[0, 2]))));
        assert_eq!(eval(&q, &Rational::from_integer((-1).into())), Rational::zero());
    }
}
