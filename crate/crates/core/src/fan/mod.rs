//! Rational polyhedral fans in the nonnegative orthant.

mod regularize;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::polyhedral::{dd_facets, NewtonPolyhedron};

pub use regularize::{regularize, regularize_with, RegularizeConfig, RegularizeStats};

/// Checks that `v` is a valid ray: nonzero, nonnegative, primitive.
pub fn check_ray(v: &[i64]) -> Result<()> {
    if v.iter().all(|&x| x == 0) || !linalg::is_nonneg(v) || linalg::content(v) != 1 {
        return Err(Error::InvalidRay(v.to_vec()));
    }
    Ok(())
}

pub fn is_coordinate_ray(v: &[i64]) -> bool {
    v.iter().filter(|&&x| x != 0).count() == 1
}

/// A fan stored by its maximal cones. Rays are deduplicated and sorted
/// lexicographically; cones are sorted lists of ray indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FanJson", into = "FanJson")]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct FanJson {
    dim: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
}

impl From<Fan> for FanJson {
    fn from(f: Fan) -> Self {
        FanJson { dim: f.dim, rays: f.rays, cones: f.cones }
    }
}

impl TryFrom<FanJson> for Fan {
    type Error = Error;
    fn try_from(j: FanJson) -> Result<Fan> {
        let cones = j
            .cones
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&i| {
                        j.rays
                            .get(i)
                            .cloned()
                            .ok_or_else(|| Error::InvalidFan(format!("ray index {i} out of range")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Fan::from_cones(j.dim, cones)
    }
}

impl Fan {
    /// Builds a fan from maximal cones given by their ray vectors.
    ///
    /// Only ray validity and dimensions are checked here; use
    /// [`Fan::check_support`] for the geometric fan conditions.
    pub fn from_cones(dim: usize, cones: Vec<Vec<Vec<i64>>>) -> Result<Fan> {
        if dim == 0 {
            return Err(Error::InvalidFan("dimension must be positive".into()));
        }
        if cones.is_empty() {
            return Err(Error::InvalidFan("no cones".into()));
        }
        let mut rays: Vec<Vec<i64>> = Vec::new();
        for c in &cones {
            if c.is_empty() {
                return Err(Error::InvalidFan("empty cone".into()));
            }
            for r in c {
                if r.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, got: r.len() });
                }
                check_ray(r)?;
                rays.push(r.clone());
            }
        }
        rays.sort();
        rays.dedup();
        let index: BTreeMap<&Vec<i64>, usize> = rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut idx_cones: Vec<Vec<usize>> = cones
            .iter()
            .map(|c| {
                let mut v: Vec<usize> = c.iter().map(|r| index[r]).collect();
                v.sort();
                v.dedup();
                v
            })
            .collect();
        idx_cones.sort();
        idx_cones.dedup();
        Ok(Fan { dim, rays, cones: idx_cones })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn cone_rays(&self, i: usize) -> Vec<Vec<i64>> {
        self.cones[i].iter().map(|&r| self.rays[r].clone()).collect()
    }

    pub fn all_cone_rays(&self) -> Vec<Vec<Vec<i64>>> {
        (0..self.cones.len()).map(|i| self.cone_rays(i)).collect()
    }

    pub fn is_simplicial(&self) -> bool {
        (0..self.cones.len()).all(|i| {
            let r = self.cone_rays(i);
            linalg::rank(&r) == r.len()
        })
    }

    /// Largest multiplicity over the maximal cones; `None` if some cone is
    /// not simplicial.
    pub fn max_multiplicity(&self) -> Option<u64> {
        (0..self.cones.len())
            .map(|i| cone_multiplicity(&self.cone_rays(i)).ok())
            .try_fold(0, |m, x| x.map(|x| m.max(x)))
    }

    pub fn is_regular(&self) -> bool {
        self.max_multiplicity() == Some(1)
    }

    /// Verifies that the maximal cones are full-dimensional, meet along
    /// common walls and cover the orthant exactly once.
    ///
    /// Every wall in a coordinate hyperplane must bound one cone, every other
    /// wall exactly two cones lying on opposite sides, and a generic interior
    /// point must be covered by exactly one cone.
    pub fn check_support(&self) -> std::result::Result<(), String> {
        let mut walls: BTreeMap<Vec<usize>, Vec<(usize, Vec<i64>)>> = BTreeMap::new();
        let mut ineqs: Vec<Vec<Vec<i64>>> = Vec::with_capacity(self.cones.len());
        for (ci, cone) in self.cones.iter().enumerate() {
            let rays = self.cone_rays(ci);
            if linalg::rank(&rays) != self.dim {
                return Err(format!("cone {ci} is not full-dimensional"));
            }
            let us = dd_facets(&rays).map_err(|e| e.to_string())?;
            for u in &us {
                let wall: Vec<usize> =
                    cone.iter().copied().filter(|&r| linalg::dot(u, &self.rays[r]) == 0).collect();
                walls.entry(wall).or_default().push((ci, u.clone()));
            }
            ineqs.push(us);
        }
        for (wall, sides) in &walls {
            let boundary = is_coordinate_ray(&sides[0].1) && sides[0].1.iter().all(|&x| x >= 0);
            match (boundary, sides.len()) {
                (true, 1) => {}
                (false, 2) => {
                    let neg: Vec<i64> = sides[1].1.iter().map(|x| -x).collect();
                    if sides[0].1 != neg {
                        return Err(format!("wall {wall:?} has both cones on one side"));
                    }
                }
                (b, k) => {
                    return Err(format!(
                        "wall {wall:?} ({}) bounds {k} cones",
                        if b { "boundary" } else { "interior" }
                    ))
                }
            }
        }
        let normals: Vec<&Vec<i64>> = walls.values().map(|s| &s[0].1).collect();
        let point = generic_point(self.dim, &normals);
        let covering = ineqs.iter().filter(|us| us.iter().all(|u| linalg::dot(u, &point) > 0)).count();
        if covering != 1 {
            return Err(format!("generic point covered by {covering} cones"));
        }
        Ok(())
    }

    /// Index of a maximal cone containing all of `rays`, if any.
    pub fn cone_containing(&self, rays: &[Vec<i64>]) -> Option<usize> {
        (0..self.cones.len()).find(|&ci| {
            let Ok(us) = dd_facets(&self.cone_rays(ci)) else {
                return false;
            };
            rays.iter().all(|r| us.iter().all(|u| linalg::dot(u, r) >= 0))
        })
    }
}

fn generic_point(dim: usize, avoid: &[&Vec<i64>]) -> Vec<i64> {
    const PRIMES: [i64; 8] = [1009, 1013, 1019, 1021, 1031, 1033, 1039, 1049];
    for shift in 0.. {
        let p: Vec<i64> =
            (0..dim).map(|i| PRIMES[(i + shift) % PRIMES.len()] * (1 + i as i64 + shift as i64)).collect();
        if avoid.iter().all(|u| linalg::dot(u, &p) != 0) {
            return p;
        }
    }
    unreachable!()
}

/// Lattice multiplicity of the simplicial cone on `rays`: the gcd of the
/// maximal minors of the ray matrix. 1 iff the rays extend to a basis.
pub fn cone_multiplicity(rays: &[Vec<i64>]) -> Result<u64> {
    let k = rays.len();
    let n = rays.first().map_or(0, |r| r.len());
    if k == 0 || k > n {
        return Err(Error::DependentRays);
    }
    let mut g = BigInt::zero();
    for cols in combinations(n, k) {
        let sub: Vec<Vec<i64>> = rays.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
        g = g.gcd(&linalg::det(&sub));
    }
    if g.is_zero() {
        return Err(Error::DependentRays);
    }
    g.to_u64().ok_or(Error::Overflow("multiplicity"))
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// The normal fan of a Newton polyhedron: one maximal cone per vertex,
/// spanned by the normals of the facets through that vertex.
pub fn dual_fan(np: &NewtonPolyhedron) -> Result<Fan> {
    let cones: Vec<Vec<Vec<i64>>> = np
        .vertices()
        .iter()
        .map(|p| np.facets().iter().filter(|h| h.value(p) == h.height).map(|h| h.normal.clone()).collect())
        .collect();
    Fan::from_cones(np.nvars(), cones)
}

/// Does every maximal cone of `fine` lie in some cone of `coarse`?
///
/// Both fans must cover the orthant; a support failure is an error rather
/// than a `false`.
pub fn refines(fine: &Fan, coarse: &Fan) -> Result<bool> {
    if fine.dim != coarse.dim {
        return Err(Error::DimensionMismatch { expected: coarse.dim, got: fine.dim });
    }
    fine.check_support().map_err(|e| Error::SupportMismatch(format!("fine fan: {e}")))?;
    coarse.check_support().map_err(|e| Error::SupportMismatch(format!("coarse fan: {e}")))?;
    cones_contained(fine, coarse)
}

/// Does every maximal cone of `fine` lie in some cone of `coarse`? No
/// support condition.
pub fn cones_contained(fine: &Fan, coarse: &Fan) -> Result<bool> {
    if fine.dim != coarse.dim {
        return Err(Error::DimensionMismatch { expected: coarse.dim, got: fine.dim });
    }
    let coarse_ineqs: Vec<Vec<Vec<i64>>> =
        (0..coarse.cones.len()).map(|i| dd_facets(&coarse.cone_rays(i))).collect::<Result<_>>()?;
    Ok((0..fine.cones.len()).all(|ci| {
        let rays = fine.cone_rays(ci);
        coarse_ineqs.iter().any(|us| rays.iter().all(|r| us.iter().all(|u| linalg::dot(u, r) >= 0)))
    }))
}
