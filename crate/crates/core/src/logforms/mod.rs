//! Valuations of m-fold forms `h (dx)^m / f^m` along the rays of a toric
//! resolution, the log-pole criterion, and the deformation check.

mod deformation;
mod rounding;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactpoly::Poly;
use crate::fan::{check_ray, dual_fan, is_coordinate_ray, refines, Fan};
use crate::linalg;
use crate::polyhedral::newton_polyhedron;

pub use deformation::{
    deformation_extension_check, DeformationInstance, DeformationRay, DeformationReport, FanStats,
};
pub use rounding::{rounding_exhaustive, rounding_implication, RoundingReport, RoundingSweep};

/// The form `h (dx)^m / f^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogFormRep {
    pub h: Poly,
    pub m: u32,
}

impl LogFormRep {
    pub fn new(h: Poly, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::Precondition("m must be positive".into()));
        }
        Ok(LogFormRep { h, m })
    }
}

/// `min <v, supp p>`, the order of `p` along the divisor of `v`.
pub fn ray_valuation(p: &Poly, v: &[i64]) -> Result<i64> {
    if v.len() != p.nvars() {
        return Err(Error::DimensionMismatch { expected: p.nvars(), got: v.len() });
    }
    check_ray(v)?;
    p.min_dot(v).ok_or(Error::ZeroPolynomial)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayValuationReport {
    pub ray: Vec<i64>,
    pub nu_h: i64,
    pub nu_f: i64,
    /// `<v, 1> - 1`, the order of `dx_1 ... dx_n`.
    pub b: i64,
    pub nu_form: i64,
    pub threshold: i64,
    pub pass: bool,
}

/// `nu_h + m (<v,1> - 1) - m nu_f`, compared with `-m`.
pub fn form_valuation(f: &Poly, rep: &LogFormRep, v: &[i64]) -> Result<RayValuationReport> {
    let nu_h = ray_valuation(&rep.h, v)?;
    let nu_f = ray_valuation(f, v)?;
    let m = rep.m as i64;
    let b = v.iter().sum::<i64>() - 1;
    let nu_form = nu_h + m * b - m * nu_f;
    Ok(RayValuationReport { ray: v.to_vec(), nu_h, nu_f, b, nu_form, threshold: -m, pass: nu_form >= -m })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RayKind {
    /// A ray of an exceptional (or other non-coordinate) divisor.
    Exceptional,
    /// The strict transform of a coordinate hyperplane.
    Coordinate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogRayCheck {
    pub ray: Vec<i64>,
    pub kind: RayKind,
    pub nu_h: Option<i64>,
    pub required: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogFormReport {
    pub m: u32,
    pub pass: bool,
    pub rays: Vec<LogRayCheck>,
}

/// Checks forms against one fan; validates the fan once.
pub struct LogFormChecker<'a> {
    f: &'a Poly,
    rays: Vec<(Vec<i64>, RayKind, i64)>,
}

impl<'a> LogFormChecker<'a> {
    /// `fan` must refine the dual fan of the Newton polyhedron of `f`.
    pub fn new(f: &'a Poly, fan: &Fan) -> Result<Self> {
        if fan.dim() != f.nvars() {
            return Err(Error::DimensionMismatch { expected: f.nvars(), got: fan.dim() });
        }
        let np = newton_polyhedron(f)?;
        if !refines(fan, &dual_fan(&np)?)? {
            return Err(Error::InvalidFan(
                "fan does not refine the dual fan of the Newton polyhedron".into(),
            ));
        }
        let rays = fan
            .rays()
            .iter()
            .map(|v| {
                let kind = if is_coordinate_ray(v) { RayKind::Coordinate } else { RayKind::Exceptional };
                let nu_f = f.min_dot(v).expect("f is nonzero");
                (v.clone(), kind, nu_f)
            })
            .collect();
        Ok(LogFormChecker { f, rays })
    }

    pub fn f(&self) -> &Poly {
        self.f
    }

    /// `nu_h(v) >= m nu_f(v)` on non-coordinate rays and `nu_h(e_i) >= m`
    /// on coordinate rays. The zero form passes.
    pub fn check(&self, rep: &LogFormRep) -> Result<LogFormReport> {
        if rep.h.nvars() != self.f.nvars() {
            return Err(Error::NvarsMismatch { left: self.f.nvars(), right: rep.h.nvars() });
        }
        let m = rep.m as i64;
        let rays: Vec<LogRayCheck> = self
            .rays
            .iter()
            .map(|(v, kind, nu_f)| {
                let nu_h = rep.h.min_dot(v);
                let required = match kind {
                    RayKind::Coordinate => m,
                    RayKind::Exceptional => m * nu_f,
                };
                LogRayCheck {
                    ray: v.clone(),
                    kind: *kind,
                    nu_h,
                    required,
                    pass: nu_h.is_none_or(|x| x >= required),
                }
            })
            .collect();
        Ok(LogFormReport { m: rep.m, pass: rays.iter().all(|r| r.pass), rays })
    }

    /// Like [`check`](Self::check) but returns only the verdict.
    pub fn is_log_form(&self, rep: &LogFormRep) -> Result<bool> {
        Ok(self.check(rep)?.pass)
    }
}

pub fn is_log_form(f: &Poly, rep: &LogFormRep, fan: &Fan) -> Result<LogFormReport> {
    LogFormChecker::new(f, fan)?.check(rep)
}

/// `f | h1 - h2`.
pub fn residue_class_equal(f: &Poly, h1: &Poly, h2: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    h1.try_sub(h2)?.is_divisible_by(f)
}

/// `b in m Delta` and `b >= (m, ..., m)`, tested against the facet
/// inequalities directly.
pub fn monomial_log_condition(f: &Poly, b: &[i64], m: u32) -> Result<bool> {
    let np = newton_polyhedron(f)?;
    let m = m as i64;
    Ok(b.iter().all(|&x| x >= m) && np.facets().iter().all(|h| linalg::dot(&h.normal, b) >= m * h.height))
}
