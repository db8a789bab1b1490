use super::{contains_lattice_dil, Dilation, Region};
use crate::error::{Error, Result};
use crate::exactpoly::{Exponent, Rational};

pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

/// Lattice points `b >= 0` outside `a * region` with `b[axis] < bound` for
/// each extra bound, in lexicographic order.
///
/// The scan box comes from the cuts: a cut `<v, b> >= a c` with `v_j > 0`
/// can only fail when `b_j < a c / v_j`. A coordinate not bounded by every
/// cut needs an extra bound, otherwise the enumeration is reported as
/// unbounded.
pub fn enumerate_complement<R: Region + ?Sized>(
    region: &R,
    a: &Rational,
    extra_bounds: &[(usize, u32)],
    cap: u128,
) -> Result<Vec<Exponent>> {
    let n = region.nvars();
    let dil = Dilation::new(a);
    if dil.is_zero() {
        return Ok(Vec::new());
    }
    let mut upper: Vec<Option<i64>> = (0..n)
        .map(|j| {
            let mut best = 0i64;
            for h in region.cuts() {
                let v = h.normal[j];
                if v <= 0 {
                    return None;
                }
                // exclusive bound ceil(a c / v)
                let num = dil.exact().numer() * num_bigint::BigInt::from(h.height);
                let den = dil.exact().denom() * num_bigint::BigInt::from(v);
                let q = num_integer::Integer::div_ceil(&num, &den);
                let q: i64 = num_traits::ToPrimitive::to_i64(&q).unwrap_or(i64::MAX);
                best = best.max(q);
            }
            Some(best)
        })
        .collect();
    for &(axis, bound) in extra_bounds {
        if axis >= n {
            return Err(Error::VariableOutOfRange { index: axis + 1, nvars: n });
        }
        let b = bound as i64;
        upper[axis] = Some(upper[axis].map_or(b, |u| u.min(b)));
    }
    let upper: Vec<i64> = upper
        .into_iter()
        .enumerate()
        .map(|(j, u)| u.ok_or(Error::Unbounded { coord: j }))
        .collect::<Result<_>>()?;
    let size = upper.iter().try_fold(1u128, |acc, &u| acc.checked_mul(u.max(0) as u128)).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::EnumerationOverflow { size, cap });
    }
    let mut out = Vec::new();
    if upper.iter().any(|&u| u <= 0) {
        return Ok(out);
    }
    let mut b = vec![0i64; n];
    loop {
        if !contains_lattice_dil(region, &b, &dil) {
            out.push(Exponent::new(b.iter().map(|&x| x as u32).collect()));
        }
        // odometer, last coordinate fastest
        let mut j = n;
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            b[j] += 1;
            if b[j] < upper[j] {
                break;
            }
            b[j] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;
    use crate::polyhedral::{build_delta1, newton_polyhedron};

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn cusp_complements() {
        let c = newton_polyhedron(&parse_poly("x1^3+x1*x2+x2^3", 2).unwrap()).unwrap();
        let d = build_delta1(&c, 0).unwrap();
        let pts = enumerate_complement(&d, &r(1), &[(0, 1)], DEFAULT_ENUMERATION_CAP).unwrap();
        let want: Vec<Exponent> = (0..3).map(|j| Exponent::new(vec![0, j])).collect();
        assert_eq!(pts, want);
        let pts = enumerate_complement(&d, &r(2), &[(0, 1)], DEFAULT_ENUMERATION_CAP).unwrap();
        let want: Vec<Exponent> = (0..6).map(|j| Exponent::new(vec![0, j])).collect();
        assert_eq!(pts, want);
        assert!(enumerate_complement(&d, &r(0), &[], DEFAULT_ENUMERATION_CAP).unwrap().is_empty());
    }

    #[test]
    fn unbounded_and_overflow() {
        let p = newton_polyhedron(&parse_poly("x1", 2).unwrap()).unwrap();
        assert!(matches!(
            enumerate_complement(&p, &r(1), &[], DEFAULT_ENUMERATION_CAP),
            Err(Error::Unbounded { coord: 1 })
        ));
        let ok = enumerate_complement(&p, &r(1), &[(1, 4)], DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(ok.len(), 4);
        let a = newton_polyhedron(&parse_poly("x1^2+x2^2+x3^2", 3).unwrap()).unwrap();
        assert!(matches!(
            enumerate_complement(&a, &r(1000), &[], DEFAULT_ENUMERATION_CAP),
            Err(Error::EnumerationOverflow { .. })
        ));
    }

    #[test]
    fn complement_matches_membership() {
        let a = newton_polyhedron(&parse_poly("x1^2+x2^3+x3^5+x1*x2", 3).unwrap()).unwrap();
        let a3 = Rational::new(5.into(), 2.into());
        let pts = enumerate_complement(&a, &a3, &[], DEFAULT_ENUMERATION_CAP).unwrap();
        for b in &pts {
            assert!(!a.contains_exponent(b, &a3));
        }
        // brute force over a generous box
        let mut count = 0;
        for x in 0..12 {
            for y in 0..12 {
                for z in 0..16 {
                    if !a.contains_lattice(&[x, y, z], &a3) {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, pts.len());
    }
}
