use std::collections::BTreeSet;

use serde::Serialize;

use super::{dd_facets, HalfSpace, Region};
use crate::error::{Error, Result};
use crate::exactpoly::Poly;
use crate::linalg;

/// The Newton polyhedron `conv(supp f) + R_{>=0}^n` of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    nvars: usize,
    vertices: Vec<Vec<i64>>,
    facets: Vec<HalfSpace>,
    compact: Vec<usize>,
    cuts: Vec<HalfSpace>,
}

/// A bounded face of a Newton polyhedron.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompactFace {
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
    /// Indices into [`NewtonPolyhedron::facets`] of the facets containing
    /// this face.
    pub facets: Vec<usize>,
}

impl CompactFace {
    /// A weight vector whose minimizing face on the polyhedron is exactly
    /// this face (the sum of the containing facet normals), together with the
    /// minimum value.
    pub fn supporting_weight(&self, np: &NewtonPolyhedron) -> (Vec<i64>, i64) {
        let mut w = vec![0i64; np.nvars];
        for &fi in &self.facets {
            for (x, y) in w.iter_mut().zip(&np.facets[fi].normal) {
                *x += y;
            }
        }
        let c = linalg::dot(&w, &self.vertices[0]);
        (w, c)
    }

    /// The truncation `f_face` of `f` to this face.
    pub fn truncate(&self, np: &NewtonPolyhedron, f: &Poly) -> Poly {
        let (w, c) = self.supporting_weight(np);
        f.face_part(&w, c)
    }
}

/// Computes the Newton polyhedron of `f` via the double-description facets
/// of the cone over `(supp f) x {1}` and the coordinate rays `(e_i, 0)`.
pub fn newton_polyhedron(f: &Poly) -> Result<NewtonPolyhedron> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.nvars();
    let points: Vec<Vec<i64>> = f.support().map(|e| e.to_i64()).collect();
    if points.iter().any(|p| p.iter().all(|&x| x == 0)) {
        return Err(Error::NoCompactFacet);
    }
    let mut gens: Vec<Vec<i64>> = points
        .iter()
        .map(|p| {
            let mut g = p.clone();
            g.push(1);
            g
        })
        .collect();
    for i in 0..n {
        let mut g = vec![0; n + 1];
        g[i] = 1;
        gens.push(g);
    }
    let mut facets: Vec<HalfSpace> = dd_facets(&gens)?
        .into_iter()
        .filter(|u| u[..n].iter().any(|&x| x != 0))
        .map(|u| HalfSpace { normal: u[..n].to_vec(), height: -u[n] })
        .collect();
    debug_assert!(facets.iter().all(|h| linalg::is_nonneg(&h.normal)));
    // compact facets first, then by normal
    facets.sort_by(|a, b| b.is_compact().cmp(&a.is_compact()).then_with(|| a.normal.cmp(&b.normal)));
    let compact: Vec<usize> = (0..facets.len()).filter(|&i| facets[i].is_compact()).collect();
    let cuts: Vec<HalfSpace> = facets.iter().filter(|h| h.height > 0).cloned().collect();
    if cuts.is_empty() {
        return Err(Error::NoCompactFacet);
    }

    let mut vertices: Vec<Vec<i64>> = points
        .iter()
        .filter(|p| {
            let tight: Vec<Vec<i64>> =
                facets.iter().filter(|h| h.value(p) == h.height).map(|h| h.normal.clone()).collect();
            linalg::rank(&tight) == n
        })
        .cloned()
        .collect();
    vertices.sort();
    vertices.dedup();

    Ok(NewtonPolyhedron { nvars: n, vertices, facets, compact, cuts })
}

impl NewtonPolyhedron {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Extreme points, lexicographically sorted.
    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// All facets: compact ones first (sorted by normal), then the
    /// non-compact ones, which include the coordinate facets `r_i >= 0`.
    pub fn facets(&self) -> &[HalfSpace] {
        &self.facets
    }

    pub fn compact_facet_indices(&self) -> &[usize] {
        &self.compact
    }

    pub fn compact_facets(&self) -> impl Iterator<Item = &HalfSpace> + '_ {
        self.compact.iter().map(|&i| &self.facets[i])
    }

    /// Vertices lying on facet `i`.
    pub fn facet_vertices(&self, i: usize) -> Vec<&Vec<i64>> {
        let h = &self.facets[i];
        self.vertices.iter().filter(|p| h.value(p) == h.height).collect()
    }

    /// `min <v, r>` over the polyhedron, for `v >= 0`.
    pub fn height(&self, v: &[i64]) -> Result<i64> {
        if v.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: v.len() });
        }
        if !linalg::is_nonneg(v) {
            return Err(Error::NegativeEntry(v.to_vec()));
        }
        Ok(self.vertices.iter().map(|p| linalg::dot(v, p)).min().expect("nonempty vertex set"))
    }

    /// All compact faces of every dimension, largest dimension first.
    pub fn compact_face_lattice(&self) -> Vec<CompactFace> {
        let nv = self.vertices.len();
        let nf = self.facets.len();
        let tight: Vec<Vec<bool>> = self
            .vertices
            .iter()
            .map(|p| self.facets.iter().map(|h| h.value(p) == h.height).collect())
            .collect();
        let facet_sets: Vec<Vec<usize>> =
            (0..nf).map(|f| (0..nv).filter(|&v| tight[v][f]).collect()).collect();

        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier: Vec<Vec<usize>> = Vec::new();
        for s in &facet_sets {
            if !s.is_empty() && seen.insert(s.clone()) {
                frontier.push(s.clone());
            }
        }
        while let Some(w) = frontier.pop() {
            for s in &facet_sets {
                let meet: Vec<usize> = w.iter().copied().filter(|v| s.contains(v)).collect();
                if !meet.is_empty() && seen.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }

        let mut faces: Vec<CompactFace> = seen
            .into_iter()
            .filter_map(|w| {
                let on: Vec<usize> = (0..nf).filter(|&f| w.iter().all(|&v| tight[v][f])).collect();
                let mut covered = vec![false; self.nvars];
                for &f in &on {
                    for (c, &x) in covered.iter_mut().zip(&self.facets[f].normal) {
                        *c |= x > 0;
                    }
                }
                if !covered.iter().all(|&c| c) {
                    return None;
                }
                let normals: Vec<Vec<i64>> = on.iter().map(|&f| self.facets[f].normal.clone()).collect();
                Some(CompactFace {
                    dim: self.nvars - linalg::rank(&normals),
                    vertices: w.iter().map(|&v| self.vertices[v].clone()).collect(),
                    facets: on,
                })
            })
            .collect();
        faces.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.vertices.cmp(&b.vertices)));
        faces
    }
}

impl Region for NewtonPolyhedron {
    fn nvars(&self) -> usize {
        self.nvars
    }

    fn cuts(&self) -> &[HalfSpace] {
        &self.cuts
    }
}

#[derive(Serialize)]
struct FacetJson<'a> {
    normal: &'a [i64],
    height: i64,
    compact: bool,
}

impl Serialize for NewtonPolyhedron {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let facets: Vec<FacetJson> = self
            .facets
            .iter()
            .map(|h| FacetJson { normal: &h.normal, height: h.height, compact: h.is_compact() })
            .collect();
        let mut st = s.serialize_struct("NewtonPolyhedron", 2)?;
        st.serialize_field("vertices", &self.vertices)?;
        st.serialize_field("facets", &facets)?;
        st.end()
    }
}
