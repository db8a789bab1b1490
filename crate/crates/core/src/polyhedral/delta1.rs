use serde::Serialize;

use super::{HalfSpace, NewtonPolyhedron, Region};
use crate::error::{Error, Result};
use crate::linalg;

/// The relaxation of a Newton polyhedron that keeps only the compact facets
/// meeting the coordinate hyperplane `r_axis = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Delta1Region {
    #[serde(skip)]
    nvars: usize,
    #[serde(skip)]
    axis: usize,
    #[serde(rename = "facets")]
    halfspaces: Vec<HalfSpace>,
    /// Indices (into the polyhedron's facets) of the selected facets.
    #[serde(skip)]
    selected: Vec<usize>,
    /// Selected facets that touch `r_axis = 0` only in dimension `< n - 2`.
    #[serde(skip)]
    low_dim_touches: Vec<usize>,
}

/// Selects the compact facets with a vertex on `r_axis = 0`. Facets touching
/// the hyperplane in a single vertex or a low-dimensional face are needed: they
/// still bound `Delta` inside the slab `r_axis <= 1`.
pub fn build_delta1(np: &NewtonPolyhedron, axis: usize) -> Result<Delta1Region> {
    let n = np.nvars();
    if axis >= n {
        return Err(Error::VariableOutOfRange { index: axis + 1, nvars: n });
    }
    let mut selected = Vec::new();
    let mut low = Vec::new();
    for &fi in np.compact_facet_indices() {
        let on_axis: Vec<&Vec<i64>> = np.facet_vertices(fi).into_iter().filter(|p| p[axis] == 0).collect();
        let Some(base) = on_axis.first() else {
            continue;
        };
        let diffs: Vec<Vec<i64>> =
            on_axis[1..].iter().map(|p| p.iter().zip(base.iter()).map(|(a, b)| a - b).collect()).collect();
        selected.push(fi);
        if linalg::rank(&diffs) + 2 < n {
            low.push(fi);
        }
    }
    if selected.is_empty() {
        return Err(Error::NoFacetMeetsAxis { axis: axis + 1 });
    }
    Ok(Delta1Region {
        nvars: n,
        axis,
        halfspaces: selected.iter().map(|&i| np.facets()[i].clone()).collect(),
        selected,
        low_dim_touches: low,
    })
}

impl Delta1Region {
    /// Zero-based coordinate index.
    pub fn axis(&self) -> usize {
        self.axis
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn selected_facets(&self) -> &[usize] {
        &self.selected
    }

    pub fn low_dim_touches(&self) -> &[usize] {
        &self.low_dim_touches
    }

    /// JSON form: the selected facets plus the one-based `axis`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "axis": self.axis + 1,
            "facets": self.halfspaces.iter().map(|h| serde_json::json!({
                "normal": h.normal,
                "height": h.height,
                "compact": true,
            })).collect::<Vec<_>>(),
            "low_dim_touches": self.low_dim_touches.len(),
        })
    }
}

impl Region for Delta1Region {
    fn nvars(&self) -> usize {
        self.nvars
    }

    fn cuts(&self) -> &[HalfSpace] {
        &self.halfspaces
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse_poly, Rational};
    use crate::polyhedral::newton_polyhedron;

    fn np(s: &str, n: usize) -> NewtonPolyhedron {
        newton_polyhedron(&parse_poly(s, n).unwrap()).unwrap()
    }

    #[test]
    fn selection() {
        let c = np("x1^3+x1*x2+x2^3", 2);
        let d = build_delta1(&c, 0).unwrap();
        assert_eq!(d.halfspaces(), &[HalfSpace { normal: vec![2, 1], height: 3 }]);
        let d2 = build_delta1(&c, 1).unwrap();
        assert_eq!(d2.halfspaces(), &[HalfSpace { normal: vec![1, 2], height: 3 }]);

        let a = np("x1^2+x2^2+x3^2", 3);
        for i in 0..3 {
            let d = build_delta1(&a, i).unwrap();
            assert_eq!(d.halfspaces(), &[HalfSpace { normal: vec![1, 1, 1], height: 2 }]);
        }
        assert!(build_delta1(&a, 3).is_err());
    }

    #[test]
    fn slab_on_cusp() {
        let c = np("x1^3+x1*x2+x2^3", 2);
        let d = build_delta1(&c, 0).unwrap();
        let one = Rational::from_integer(1.into());
        for b1 in 0..=1 {
            for b2 in 0..10 {
                assert_eq!(
                    c.contains_lattice(&[b1, b2], &one),
                    d.contains_lattice(&[b1, b2], &one),
                    "({b1},{b2})"
                );
            }
        }
        // outside the slab the two differ: (2,0) is in Delta_1 but not in Delta
        assert!(d.contains_lattice(&[2, 0], &one));
        assert!(!c.contains_lattice(&[2, 0], &one));
    }

    #[test]
    fn vertex_contact_facet_is_kept() {
        // (2,3,4) >= 8 meets r_1 = 0 only in the vertex (0,0,2)
        let p = np("2*x1^2*x2*x3^2-x1^4-x1^2*x3^2+3*x1*x2^2-x2^3+2*x3^2", 3);
        let d = build_delta1(&p, 0).unwrap();
        assert_eq!(d.halfspaces().len(), 2);
        assert_eq!(d.low_dim_touches().len(), 1);
        let q = |a: i64, b: i64| Rational::new(a.into(), b.into());
        let pt = [q(3, 4), q(1, 3), q(4, 3)];
        let one = q(1, 1);
        assert!(!p.member(&pt, &one).unwrap());
        assert_eq!(d.member(&pt, &one).unwrap(), p.member(&pt, &one).unwrap());
    }
}
