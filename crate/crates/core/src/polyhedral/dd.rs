//! Double description: facets of a cone given by generators.
//!
//! Computes the extreme rays of the dual cone `{u : <g, u> >= 0}` by
//! inserting the generator constraints one at a time (in lexicographic
//! order) starting from a simplicial cone on a basis. Adjacency of rays is
//! decided combinatorially from their zero sets. Everything is exact.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn new(n: usize) -> Self {
        ZeroSet(vec![0; n.div_ceil(64)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &ZeroSet) -> ZeroSet {
        ZeroSet(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn is_subset(&self, o: &ZeroSet) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct DdRay {
    dir: Vec<BigInt>,
    zeros: ZeroSet,
}

fn big_dot(g: &[i64], r: &[BigInt]) -> BigInt {
    g.iter().zip(r).map(|(&a, b)| BigInt::from(a) * b).sum()
}

/// Irredundant facet inequalities `<u, x> >= 0` of `cone(generators)`.
///
/// Each returned `u` is a primitive integer vector; the list is sorted
/// lexicographically. The generators must span the ambient space (the cone
/// must be full-dimensional); they need not be irredundant.
pub fn dd_facets(generators: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let first = generators.first().ok_or(Error::EmptyGenerators)?;
    let d = first.len();
    if let Some(g) = generators.iter().find(|g| g.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: g.len() });
    }
    let mut gens: Vec<Vec<i64>> =
        generators.iter().filter(|g| g.iter().any(|&x| x != 0)).map(|g| linalg::primitive(g)).collect();
    gens.sort();
    gens.dedup();
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let rank = linalg::rank(&gens);
    if rank < d {
        return Err(Error::NotFullDimensional { rank, dim: d });
    }

    // Greedy lexicographic basis.
    let mut basis: Vec<usize> = Vec::with_capacity(d);
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(d);
    for (i, g) in gens.iter().enumerate() {
        rows.push(g.clone());
        if linalg::rank(&rows) == rows.len() {
            basis.push(i);
            if basis.len() == d {
                break;
            }
        } else {
            rows.pop();
        }
    }

    let det = linalg::det(&rows);
    let adj = linalg::adjugate(&rows);
    let m = gens.len();
    let mut rays: Vec<DdRay> = (0..d)
        .map(|j| {
            let mut dir: Vec<BigInt> = (0..d).map(|i| adj[i][j].clone()).collect();
            if det.is_negative() {
                for x in dir.iter_mut() {
                    *x = -&*x;
                }
            }
            linalg::big_primitive(&mut dir);
            let mut zeros = ZeroSet::new(m);
            for (k, &b) in basis.iter().enumerate() {
                if k != j {
                    zeros.insert(b);
                }
            }
            DdRay { dir, zeros }
        })
        .collect();

    for (gi, g) in gens.iter().enumerate() {
        if basis.contains(&gi) {
            continue;
        }
        let vals: Vec<BigInt> = rays.iter().map(|r| big_dot(g, &r.dir)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.insert(gi);
                }
            }
            continue;
        }
        let mut created = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.and(&rays[n].zeros);
                if common.count() + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|o| o == p || o == n || !common.is_subset(&rays[o].zeros));
                if !adjacent {
                    continue;
                }
                let sp = &vals[p];
                let sn = -&vals[n];
                let mut dir: Vec<BigInt> =
                    rays[n].dir.iter().zip(&rays[p].dir).map(|(rn, rp)| sp * rn + &sn * rp).collect();
                linalg::big_primitive(&mut dir);
                let mut zeros = common;
                zeros.insert(gi);
                created.push(DdRay { dir, zeros });
            }
        }
        let mut next: Vec<DdRay> = Vec::with_capacity(rays.len() + created.len());
        for (r, v) in rays.into_iter().zip(&vals) {
            if v.is_positive() {
                next.push(r);
            } else if v.is_zero() {
                let mut r = r;
                r.zeros.insert(gi);
                next.push(r);
            }
        }
        next.extend(created);
        rays = next;
    }

    let mut out: Vec<Vec<i64>> = rays
        .iter()
        .map(|r| linalg::big_to_i64(&r.dir).ok_or(Error::Overflow("facet normal")))
        .collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthant_is_self_dual() {
        let f = dd_facets(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(f, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn homogenized_sum_of_squares() {
        let f = dd_facets(&[vec![2, 0, 1], vec![0, 2, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert!(f.contains(&vec![1, 1, -2]));
        assert!(f.contains(&vec![1, 0, 0]));
        assert!(f.contains(&vec![0, 1, 0]));
        assert!(f.contains(&vec![0, 0, 1]));
        assert_eq!(f.len(), 4);
    }

    #[test]
    fn homogenized_three_points() {
        let f =
            dd_facets(&[vec![3, 0, 1], vec![1, 1, 1], vec![0, 3, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert!(f.contains(&vec![1, 2, -3]));
        assert!(f.contains(&vec![2, 1, -3]));
        // facets at infinity and coordinate facets
        assert_eq!(f.len(), 5);
    }

    #[test]
    fn redundant_generators_dropped() {
        let f = dd_facets(&[vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(f, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn cube_cone() {
        // cone over a square: 4 facets
        let f = dd_facets(&[vec![1, 1, 1], vec![1, -1, 1], vec![-1, 1, 1], vec![-1, -1, 1]]).unwrap();
        assert_eq!(f, vec![vec![-1, 0, 1], vec![0, -1, 1], vec![0, 1, 1], vec![1, 0, 1]]);
    }

    #[test]
    fn errors() {
        assert_eq!(dd_facets(&[]), Err(Error::EmptyGenerators));
        assert!(matches!(
            dd_facets(&[vec![1, 0, 0], vec![0, 1, 0]]),
            Err(Error::NotFullDimensional { rank: 2, dim: 3 })
        ));
    }
}
