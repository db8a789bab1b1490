//! Unimodular refinement of a fan: pulling triangulation of the
//! non-simplicial cones followed by repeated star subdivision at the
//! smallest interior lattice point of the worst cone.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{cone_multiplicity, Fan};
use crate::error::{Error, Result};
use crate::linalg;
use crate::polyhedral::dd_facets;

#[derive(Clone, Debug)]
pub struct RegularizeConfig {
    pub max_steps: usize,
}

impl Default for RegularizeConfig {
    fn default() -> Self {
        RegularizeConfig { max_steps: 100_000 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct RegularizeStats {
    pub triangulated_cones: usize,
    pub subdivisions: usize,
    /// Rays inserted by star subdivision, in insertion order.
    pub added_rays: Vec<Vec<i64>>,
}

pub fn regularize(fan: &Fan) -> Result<Fan> {
    regularize_with(fan, &RegularizeConfig::default()).map(|(f, _)| f)
}

type Cone = Vec<Vec<i64>>;

pub fn regularize_with(fan: &Fan, cfg: &RegularizeConfig) -> Result<(Fan, RegularizeStats)> {
    let mut stats = RegularizeStats::default();
    let mut cones: BTreeSet<Cone> = BTreeSet::new();
    for rays in fan.all_cone_rays() {
        if linalg::rank(&rays) == rays.len() {
            cones.insert(rays);
        } else {
            stats.triangulated_cones += 1;
            cones.extend(pulling_triangulation(&rays)?);
        }
    }

    let mut mult: BTreeMap<Cone, u64> = BTreeMap::new();
    for c in &cones {
        mult.insert(c.clone(), cone_multiplicity(c)?);
    }
    loop {
        let worst = mult
            .iter()
            .filter(|(_, &m)| m > 1)
            .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.cmp(a.0)))
            .map(|(c, _)| c.clone());
        let Some(worst) = worst else { break };
        if stats.subdivisions >= cfg.max_steps {
            return Err(Error::IterationCap(cfg.max_steps));
        }
        let (w, tau) = subdivision_point(&worst)?;
        let affected: Vec<Cone> =
            cones.iter().filter(|c| tau.iter().all(|t| c.contains(t))).cloned().collect();
        for c in affected {
            cones.remove(&c);
            mult.remove(&c);
            for t in &tau {
                let mut nc: Cone = c.iter().filter(|r| *r != t).cloned().collect();
                nc.push(w.clone());
                nc.sort();
                let m = cone_multiplicity(&nc)?;
                mult.insert(nc.clone(), m);
                cones.insert(nc);
            }
        }
        stats.subdivisions += 1;
        stats.added_rays.push(w);
    }
    let out = Fan::from_cones(fan.dim(), cones.into_iter().collect())?;
    Ok((out, stats))
}

/// Smallest nonzero lattice point of the half-open fundamental
/// parallelepiped of a full-dimensional simplicial cone, ordered by the sum
/// of its coordinates in the ray basis and then lexicographically, together
/// with the rays of the face containing it in its relative interior.
fn subdivision_point(rays: &[Vec<i64>]) -> Result<(Vec<i64>, Vec<Vec<i64>>)> {
    let n = rays.len();
    let det = linalg::det(rays);
    if det.is_zero() {
        return Err(Error::DependentRays);
    }
    let d = det.abs();
    let sign = BigInt::from(if det.is_negative() { -1 } else { 1 });
    let adj = linalg::adjugate(rays);
    // lambda(w) = w * adj / det; numerators below scaled so lambda_i = N_i / d
    let gens: Vec<Vec<BigInt>> =
        (0..n).map(|j| (0..n).map(|i| (&adj[j][i] * &sign).mod_floor(&d)).collect()).collect();
    let zero = vec![BigInt::zero(); n];
    let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    seen.insert(zero.clone());
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y: Vec<BigInt> = x.iter().zip(g).map(|(a, b)| (a + b).mod_floor(&d)).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut best: Option<(BigInt, Vec<i64>, Vec<BigInt>)> = None;
    for nums in seen {
        if nums.iter().all(|x| x.is_zero()) {
            continue;
        }
        let mut w = Vec::with_capacity(n);
        for c in 0..n {
            let s: BigInt = nums.iter().zip(rays).map(|(x, r)| x * BigInt::from(r[c])).sum();
            let (q, r) = s.div_rem(&d);
            debug_assert!(r.is_zero());
            w.push(q.to_i64().ok_or(Error::Overflow("subdivision point"))?);
        }
        let total: BigInt = nums.iter().sum();
        let better = match &best {
            None => true,
            Some((bt, bw, _)) => total < *bt || (total == *bt && w < *bw),
        };
        if better {
            best = Some((total, w, nums));
        }
    }
    let (_, w, nums) = best.expect("multiplicity > 1 gives a nonzero point");
    let w = linalg::primitive(&w);
    let tau = rays.iter().zip(&nums).filter(|(_, x)| !x.is_zero()).map(|(r, _)| r.clone()).collect();
    Ok((w, tau))
}

/// Pulling triangulation of a full-dimensional cone, always pulling the
/// lexicographically least ray first. Because the order is global the
/// triangulations of neighbouring cones agree on shared faces.
fn pulling_triangulation(rays: &[Vec<i64>]) -> Result<Vec<Cone>> {
    let mut rays = rays.to_vec();
    rays.sort();
    let dim = rays[0].len();
    let facets: Vec<Vec<usize>> = dd_facets(&rays)?
        .iter()
        .map(|u| (0..rays.len()).filter(|&i| linalg::dot(u, &rays[i]) == 0).collect())
        .collect();
    let all: Vec<usize> = (0..rays.len()).collect();
    let simplices = pull(&rays, &facets, &all, dim);
    Ok(simplices
        .into_iter()
        .map(|s| {
            let mut c: Cone = s.into_iter().map(|i| rays[i].clone()).collect();
            c.sort();
            c
        })
        .collect())
}

fn pull(rays: &[Vec<i64>], facets: &[Vec<usize>], face: &[usize], dim: usize) -> Vec<Vec<usize>> {
    if face.len() == dim {
        return vec![face.to_vec()];
    }
    let apex = face[0];
    let sub_rank = |s: &[usize]| {
        let m: Vec<Vec<i64>> = s.iter().map(|&i| rays[i].clone()).collect();
        linalg::rank(&m)
    };
    let mut subfaces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in facets {
        let s: Vec<usize> = face.iter().copied().filter(|i| f.contains(i)).collect();
        if !s.contains(&apex) && sub_rank(&s) + 1 == dim {
            subfaces.insert(s);
        }
    }
    let mut out = Vec::new();
    for s in subfaces {
        for mut t in pull(rays, facets, &s, dim - 1) {
            t.push(apex);
            t.sort();
            out.push(t);
        }
    }
    out
}
