use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::upoly::{self, UPoly};
use super::Witness;
use crate::error::{Error, Result};
use crate::exactpoly::modp::mul_mod;
use crate::exactpoly::{Poly, Rational};
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchMode {
    FiniteField {
        primes: Vec<u64>,
        max_evaluations: u64,
    },
    /// Exact decision; requires the support of `g` to be collinear.
    ExactLowDim,
}

impl SearchMode {
    pub fn name(&self) -> &'static str {
        match self {
            SearchMode::FiniteField { .. } => "finite_field",
            SearchMode::ExactLowDim => "exact_low_dim",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchOutcome {
    pub witness: Option<Witness>,
    /// Variables not occurring in `g` (0-based).
    pub free_vars: Vec<usize>,
    pub exact: bool,
    pub primes_scanned: Vec<u64>,
    pub primes_skipped: Vec<u64>,
}

impl SearchOutcome {
    /// True when a witness was found, or when the absence of one was
    /// established exactly or by at least one complete scan.
    pub fn decided(&self) -> bool {
        self.witness.is_some() || self.exact || !self.primes_scanned.is_empty()
    }
}

/// Searches for a common torus zero of `x_i dg/dx_i`, `i = 1..n`.
pub fn torus_critical_search(g: &Poly, mode: &SearchMode) -> Result<SearchOutcome> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = g.nvars();
    let free_vars: Vec<usize> = (0..n).filter(|&i| g.support().all(|e| e[i] == 0)).collect();
    let mut out = SearchOutcome { free_vars, ..Default::default() };
    match mode {
        SearchMode::ExactLowDim => {
            out.exact = true;
            out.witness = exact_collinear(g)?;
        }
        SearchMode::FiniteField { primes, max_evaluations } => {
            for &p in primes {
                match ff_scan(g, p, *max_evaluations)? {
                    Scan::Found(point) => {
                        out.primes_scanned.push(p);
                        out.witness = Some(lift(g, p, &point)?);
                        break;
                    }
                    Scan::Exhausted => out.primes_scanned.push(p),
                    Scan::Skipped => out.primes_skipped.push(p),
                }
            }
        }
    }
    Ok(out)
}

/// Replaces a finite-field witness by its symmetric-residue lift when that
/// lift is already a rational witness.
fn lift(g: &Poly, p: u64, point: &[u64]) -> Result<Witness> {
    let half = p / 2;
    let q: Vec<Rational> = point
        .iter()
        .map(|&x| {
            let v = if x > half { x as i64 - p as i64 } else { x as i64 };
            Rational::from_integer(v.into())
        })
        .collect();
    let rational = Witness::Rational { point: q };
    if rational.verify(g)? {
        Ok(rational)
    } else {
        Ok(Witness::FiniteField { prime: p, point: point.to_vec() })
    }
}

enum Scan {
    Found(Vec<u64>),
    Exhausted,
    Skipped,
}

struct Compiled {
    /// `(coefficient, [(slot, exponent)])`; fixed variables are dropped.
    terms: Vec<(u64, Vec<(usize, usize)>)>,
}

fn ff_scan(g: &Poly, p: u64, cap: u64) -> Result<Scan> {
    let n = g.nvars();
    let occurring: Vec<usize> = (0..n).filter(|&i| g.support().any(|e| e[i] != 0)).collect();
    let mut derivs = Vec::new();
    for &i in &occurring {
        match g.log_derivative(i).mod_p(p) {
            Ok(d) if d.is_zero() => {}
            Ok(d) => derivs.push(d),
            Err(Error::DenominatorDivisible { .. }) => return Ok(Scan::Skipped),
            Err(e) => return Err(e),
        }
    }
    if derivs.is_empty() {
        return Ok(Scan::Found(vec![1; n]));
    }
    // a nonzero monomial never vanishes on the torus
    if derivs.iter().any(|d| d.terms().len() == 1) {
        return Ok(Scan::Exhausted);
    }
    derivs.sort_by_key(|d| d.terms().len());

    let fixed = torus_normalization(g, &occurring, p);
    let scan: Vec<usize> = occurring.iter().copied().filter(|&i| Some(i) != fixed).collect();
    let size = (p as u128 - 1).checked_pow(scan.len() as u32);
    if size.is_none_or(|s| s > cap as u128) {
        return Ok(Scan::Skipped);
    }
    let slot_of = |i: usize| scan.iter().position(|&j| j == i);
    let compiled: Vec<Compiled> = derivs
        .iter()
        .map(|d| Compiled {
            terms: d
                .terms()
                .iter()
                .map(|(e, c)| {
                    let factors = (0..n)
                        .filter(|&i| e[i] != 0)
                        .filter_map(|i| slot_of(i).map(|s| (s, e[i] as usize)))
                        .collect();
                    (*c, factors)
                })
                .collect(),
        })
        .collect();
    // powers[s][x][k] = x^k
    let powers: Vec<Vec<Vec<u64>>> = scan
        .iter()
        .map(|&i| {
            let top = g.support().map(|e| e[i] as usize).max().unwrap_or(0);
            (0..p)
                .map(|x| {
                    let mut row = Vec::with_capacity(top + 1);
                    let mut acc = 1 % p;
                    for _ in 0..=top {
                        row.push(acc);
                        acc = mul_mod(acc, x, p);
                    }
                    row
                })
                .collect()
        })
        .collect();

    let k = scan.len();
    let mut x = vec![1u64; k];
    loop {
        let zero = compiled.iter().all(|d| {
            let mut acc = 0u64;
            for (c, fs) in &d.terms {
                let mut t = *c;
                for &(s, e) in fs {
                    t = mul_mod(t, powers[s][x[s] as usize][e], p);
                }
                acc += t;
                if acc >= p {
                    acc -= p;
                }
            }
            acc == 0
        });
        if zero {
            let mut point = vec![1u64; n];
            for (s, &i) in scan.iter().enumerate() {
                point[i] = x[s];
            }
            return Ok(Scan::Found(point));
        }
        // odometer, last slot fastest
        let mut s = k;
        loop {
            if s == 0 {
                return Ok(Scan::Exhausted);
            }
            s -= 1;
            if x[s] + 1 < p {
                x[s] += 1;
                break;
            }
            x[s] = 1;
        }
    }
}

/// A coordinate that may be fixed to 1 without losing torus zeros.
///
/// For `w` in the kernel of the support differences, `x -> lambda^w * x`
/// rescales every log-derivative by the same unit, and when `gcd(w_j, p-1)
/// = 1` some `lambda` moves `x_j` to 1.
fn torus_normalization(g: &Poly, occurring: &[usize], p: u64) -> Option<usize> {
    let pts: Vec<Vec<i64>> = g.support().map(|e| e.to_i64()).collect();
    let base = &pts[0];
    let rows: Vec<Vec<i64>> =
        pts[1..].iter().map(|q| q.iter().zip(base).map(|(a, b)| a - b).collect()).collect();
    let kernel = if rows.is_empty() {
        (0..g.nvars())
            .map(|i| {
                let mut v = vec![BigInt::zero(); g.nvars()];
                v[i] = BigInt::one();
                v
            })
            .collect()
    } else {
        linalg::nullspace(&rows, g.nvars())
    };
    let order = BigInt::from(p - 1);
    for w in &kernel {
        for &j in occurring {
            if !w[j].is_zero() && w[j].gcd(&order).is_one() {
                return Some(j);
            }
        }
    }
    None
}

/// Writes `g = x^base * q(x^direction)` for collinear support, with
/// `direction` primitive and `q(0) != 0`.
fn collinear_form(g: &Poly) -> Result<(Vec<i64>, Vec<i64>, UPoly)> {
    let pts: Vec<(Vec<i64>, Rational)> = g.terms().map(|(e, c)| (e.to_i64(), c.clone())).collect();
    let p0 = &pts[0].0;
    let n = g.nvars();
    let Some(other) = pts.iter().find(|(q, _)| q != p0) else {
        return Ok((p0.clone(), vec![0; n], vec![pts[0].1.clone()]));
    };
    let diff: Vec<i64> = other.0.iter().zip(p0).map(|(a, b)| a - b).collect();
    let d = linalg::primitive(&diff);
    let k = d.iter().position(|&x| x != 0).unwrap();
    let mut ts = Vec::with_capacity(pts.len());
    for (q, _) in &pts {
        let dq: Vec<i64> = q.iter().zip(p0).map(|(a, b)| a - b).collect();
        let t = dq[k] / d[k];
        if dq.iter().zip(&d).any(|(a, b)| *a != t * b) {
            return Err(Error::Precondition("exact mode needs collinear support".into()));
        }
        ts.push(t);
    }
    let tmin = *ts.iter().min().unwrap();
    let base: Vec<i64> = p0.iter().zip(&d).map(|(a, b)| a + tmin * b).collect();
    let top = (ts.iter().max().unwrap() - tmin) as usize;
    let mut q = vec![Rational::zero(); top + 1];
    for ((_, c), t) in pts.iter().zip(&ts) {
        q[(t - tmin) as usize] = c.clone();
    }
    Ok((base, d, q))
}

/// For `g = x^a q(u)` with `u = x^d`: `x_i dg/dx_i = x^a (a_i q + d_i u q')`.
fn critical_factor(base: &[i64], d: &[i64], q: &UPoly) -> Option<UPoly> {
    let dq = upoly::derivative(q);
    if linalg::rank(&[base.to_vec(), d.to_vec()]) == 2 {
        // a and d independent: common root of q and q'
        let g = upoly::strip_u(upoly::gcd(q, &dq));
        return (!upoly::is_constant(&g)).then_some(g);
    }
    // a = s d: roots of s q + u q'
    let k = d.iter().position(|&x| x != 0).unwrap();
    let s = Rational::new(base[k].into(), d[k].into());
    let r = upoly::scale_add(q, &s, &upoly::shift_up(&dq), &Rational::one());
    if upoly::degree(&r).is_none() {
        return Some(Vec::new());
    }
    let r = upoly::monic(upoly::strip_u(r));
    (!upoly::is_constant(&r)).then_some(r)
}

fn exact_collinear(g: &Poly) -> Result<Option<Witness>> {
    let n = g.nvars();
    let (base, d, q) = collinear_form(g)?;
    if d.iter().all(|&x| x == 0) {
        // a single monomial: critical everywhere iff constant
        let ones = vec![Rational::one(); n];
        return Ok(base.iter().all(|&x| x == 0).then_some(Witness::Rational { point: ones }));
    }
    let Some(factor) = critical_factor(&base, &d, &q) else {
        return Ok(None);
    };
    let u0 = match upoly::degree(&factor) {
        None => Rational::one(),
        Some(1) => -&factor[0] / &factor[1],
        Some(_) => return Ok(Some(Witness::Algebraic { base, direction: d, factor })),
    };
    let y = bezout(&d);
    let point = y.iter().map(|&e| rational_pow(&u0, e)).collect();
    Ok(Some(Witness::Rational { point }))
}

/// `y` with `<d, y> = 1` for primitive `d`, preferring `+-e_i` for the last
/// unit entry.
fn bezout(d: &[i64]) -> Vec<i64> {
    let mut y = vec![0i64; d.len()];
    if let Some(i) = d.iter().rposition(|&x| x.abs() == 1) {
        y[i] = d[i];
        return y;
    }
    // running extended gcd: g = <d[..=i], y[..=i]>
    let mut g = 0i64;
    for (i, &di) in d.iter().enumerate() {
        if di == 0 {
            continue;
        }
        if g == 0 {
            g = di;
            y[i] = 1;
            continue;
        }
        let e = g.extended_gcd(&di);
        for v in y.iter_mut().take(i) {
            *v *= e.x;
        }
        y[i] = e.y;
        g = e.gcd;
    }
    if g < 0 {
        y.iter_mut().for_each(|v| *v = -*v);
    }
    y
}

fn rational_pow(u: &Rational, e: i64) -> Rational {
    let mut r = Rational::one();
    for _ in 0..e.unsigned_abs() {
        r *= u;
    }
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

pub(super) fn verify_algebraic(g: &Poly, base: &[i64], d: &[i64], factor: &[Rational]) -> Result<bool> {
    let n = g.nvars();
    let factor = upoly::trim(factor.to_vec());
    if base.len() != n || d.len() != n || upoly::is_constant(&factor) || factor[0].is_zero() {
        return Ok(false);
    }
    let Some(k) = d.iter().position(|&x| x != 0) else {
        return Ok(false);
    };
    // rebuild q from g with the stated base and direction
    let mut q: UPoly = Vec::new();
    for (e, c) in g.terms() {
        let diff: Vec<i64> = e.to_i64().iter().zip(base).map(|(a, b)| a - b).collect();
        let j = diff[k] / d[k];
        if j < 0 || diff.iter().zip(d).any(|(a, b)| *a != j * b) {
            return Ok(false);
        }
        let j = j as usize;
        if q.len() <= j {
            q.resize(j + 1, Rational::zero());
        }
        q[j] = c.clone();
    }
    let udq = upoly::shift_up(&upoly::derivative(&q));
    for i in 0..n {
        let a = Rational::from_integer(base[i].into());
        let di = Rational::from_integer(d[i].into());
        let e = upoly::scale_add(&q, &a, &udq, &di);
        if upoly::degree(&e).is_some() && upoly::degree(&upoly::rem(&e, &factor)).is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    fn ff(primes: &[u64]) -> SearchMode {
        SearchMode::FiniteField { primes: primes.to_vec(), max_evaluations: 10_000_000 }
    }

    #[test]
    fn spec_examples() {
        let g = parse_poly("x1^2", 1).unwrap();
        assert_eq!(torus_critical_search(&g, &ff(&[101])).unwrap().witness, None);
        let g = parse_poly("(x1+x2)^2", 2).unwrap();
        let out = torus_critical_search(&g, &ff(&[101])).unwrap();
        // lift of (1, 100) is the rational point (1, -1)
        let one = Rational::one();
        assert_eq!(out.witness, Some(Witness::Rational { point: vec![one.clone(), -one] }));
        assert_eq!(
            ff_scan(&g, 101, 1 << 20).ok().map(|s| match s {
                Scan::Found(p) => p,
                _ => vec![],
            }),
            Some(vec![1, 100])
        );
        let g = parse_poly("x1^2+x2^2", 2).unwrap();
        let out = torus_critical_search(&g, &ff(&[101])).unwrap();
        assert_eq!(out.witness, None);
        assert_eq!(out.primes_scanned, vec![101]);
    }

    #[test]
    fn finite_field_only_witness() {
        // x1^2 + x1*x2 + x2^2 has torus critical points only where 3 = 0 or
        // over a cube root of unity; F_103 contains one, Q does not
        let g = parse_poly("(x1^2+x1*x2+x2^2)^2", 2).unwrap();
        let out = torus_critical_search(&g, &ff(&[103])).unwrap();
        let w = out.witness.unwrap();
        assert!(matches!(w, Witness::FiniteField { prime: 103, .. }));
        assert!(w.verify(&g).unwrap());
        let exact = torus_critical_search(&g, &SearchMode::ExactLowDim).unwrap();
        assert!(exact.witness.unwrap().verify(&g).unwrap());
    }

    #[test]
    fn exact_mode_cases() {
        let e = |s: &str, n| torus_critical_search(&parse_poly(s, n).unwrap(), &SearchMode::ExactLowDim);
        assert_eq!(e("x1^2+x2^3", 2).unwrap().witness, None);
        assert_eq!(e("x1^2*x2", 2).unwrap().witness, None);
        let w = e("x1^2-2*x1*x2*x3+x2^2*x3^2", 3).unwrap().witness.unwrap();
        assert!(w.verify(&parse_poly("x1^2-2*x1*x2*x3+x2^2*x3^2", 3).unwrap()).unwrap());
        // dependent base and direction: x^2 - x^4 has log-derivative 2x^2 - 4x^4
        let g = parse_poly("x1^2-x1^4", 1).unwrap();
        let w = e("x1^2-x1^4", 1).unwrap().witness.unwrap();
        assert!(w.verify(&g).unwrap());
        assert!(matches!(e("x1^2+x2^2+x3^2", 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn bezout_vectors() {
        for d in [vec![1, -1, 0], vec![2, 3], vec![6, 10, 15], vec![-4, 0, 9], vec![0, 5, -7]] {
            let y = bezout(&d);
            assert_eq!(linalg::dot(&d, &y), 1, "{d:?}");
        }
        assert_eq!(bezout(&[1, -1, 0]), vec![0, -1, 0]);
    }

    #[test]
    fn free_variables() {
        let g = parse_poly("(x1+x3)^2", 4).unwrap();
        let out = torus_critical_search(&g, &ff(&[101])).unwrap();
        assert_eq!(out.free_vars, vec![1, 3]);
        assert!(out.witness.unwrap().verify(&g).unwrap());
    }
}
