//! Small exact linear algebra over the integers and rationals.
//!
//! Matrices are row-major `Vec<Vec<_>>`; sizes here are tiny (dimension at
//! most ~6, a few dozen rows), so nothing is optimized beyond fraction-free
//! elimination where it is cheap to do.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Gcd of all entries, zero for the zero vector.
pub(crate) fn content(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| gcd_i64(g, x))
}

pub(crate) fn primitive(v: &[i64]) -> Vec<i64> {
    let g = content(v);
    if g <= 1 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub(crate) fn big_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

pub(crate) fn big_to_i64(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|x| x.to_i64()).collect()
}

/// Rank of an integer matrix, by fraction-free elimination.
pub(crate) fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m = to_big(rows);
    echelon_in_place(&mut m)
}

fn echelon_in_place(m: &mut [Vec<BigInt>]) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let a = m[r][c].clone();
            let b = m[i][c].clone();
            for j in c..ncols {
                let v = &m[i][j] * &a - &m[r][j] * &b;
                m[i][j] = v;
            }
            big_primitive(&mut m[i]);
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Determinant of a square integer matrix (Bareiss).
pub(crate) fn det(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = to_big(rows);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Adjugate of a square integer matrix: `rows * adj = det * I`.
pub(crate) fn adjugate(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    let n = rows.len();
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    if n == 1 {
        adj[0][0] = BigInt::one();
        return adj;
    }
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = rows
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let d = det(&minor);
            // adj[j][i] = (-1)^{i+j} M_{ij}
            adj[j][i] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    adj
}

/// Row-reduced echelon form over the rationals; returns the pivot columns.
pub(crate) fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    let v = &m[i][j] - &f * &m[r][j];
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right nullspace `{x : rows * x = 0}`, each vector scaled to a
/// primitive integer vector.
pub(crate) fn nullspace(rows: &[Vec<i64>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![BigRational::zero(); ncols];
            x[fc] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = -m[row][fc].clone();
            }
            rational_to_primitive(&x)
        })
        .collect()
}

pub(crate) fn rational_to_primitive(x: &[BigRational]) -> Vec<BigInt> {
    let l = x.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let mut v: Vec<BigInt> = x.iter().map(|q| (q * &l).to_integer()).collect();
    big_primitive(&mut v);
    v
}

/// Rank of a rational matrix together with one nonzero kernel vector of the
/// linear map `x -> sum_j x_j * columns[j]` when that map is not injective.
pub(crate) fn column_rank_and_kernel(
    columns: &[Vec<BigRational>],
    nrows: usize,
) -> (usize, Option<Vec<BigRational>>) {
    let ncols = columns.len();
    if ncols == 0 {
        return (0, None);
    }
    let mut m: Vec<Vec<BigRational>> =
        (0..nrows).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    let pivots = rref(&mut m);
    let rank = pivots.len();
    if rank == ncols {
        return (rank, None);
    }
    let fc = (0..ncols).find(|c| !pivots.contains(c)).unwrap();
    let mut x = vec![BigRational::zero(); ncols];
    x[fc] = BigRational::one();
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = -m[row][fc].clone();
    }
    (rank, Some(x))
}

/// Rank of the matrix with the given columns over `F_p`, or `None` when a
/// denominator vanishes mod `p`. Rank over Q is at least this value.
pub(crate) fn column_rank_mod_p(columns: &[Vec<BigRational>], nrows: usize, p: u64) -> Option<usize> {
    use crate::exactpoly::modp::{inv_mod, mul_mod};
    let big_p = BigInt::from(p);
    let red = |x: &BigInt| -> u64 { x.mod_floor(&big_p).to_u64().unwrap() };
    let mut m: Vec<Vec<u64>> = Vec::with_capacity(columns.len());
    for c in columns {
        let mut col = Vec::with_capacity(nrows);
        for q in c {
            let d = red(q.denom());
            if d == 0 {
                return None;
            }
            col.push(mul_mod(red(q.numer()), inv_mod(d, p), p));
        }
        m.push(col);
    }
    // eliminate on columns as rows of the transpose
    let mut rank = 0;
    for r in 0..nrows {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][r] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][r], p);
        for i in rank + 1..m.len() {
            if m[i][r] != 0 {
                let factor = mul_mod(m[i][r], inv, p);
                for j in r..nrows {
                    let t = mul_mod(factor, m[rank][j], p);
                    m[i][j] = (m[i][j] + p - t) % p;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    Some(rank)
}

pub(crate) fn is_nonneg(v: &[i64]) -> bool {
    v.iter().all(|&x| x >= 0)
}
