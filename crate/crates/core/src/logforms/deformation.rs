use serde::Serialize;

use super::LogFormRep;
use crate::error::{Error, Result};
use crate::exactpoly::Poly;
use crate::fan::{dual_fan, is_coordinate_ray, regularize_with, RegularizeConfig};
use crate::polyhedral::newton_polyhedron;

/// A family `F(x, t)` with `t` the last variable, and a candidate extension
/// `H(x, t)` of an m-fold form on the fibre `t = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationInstance {
    pub family: Poly,
    pub base: Poly,
    pub m: u32,
    pub extension: Poly,
}

impl DeformationInstance {
    /// `base`, when given, must equal `F(x, 0)`.
    pub fn new(family: Poly, base: Option<Poly>, m: u32, extension: Poly) -> Result<Self> {
        if family.nvars() < 2 {
            return Err(Error::Precondition("the family needs at least one x variable and t".into()));
        }
        if m == 0 {
            return Err(Error::Precondition("m must be positive".into()));
        }
        if extension.nvars() != family.nvars() {
            return Err(Error::NvarsMismatch { left: family.nvars(), right: extension.nvars() });
        }
        let fibre = family.restrict_last_to_zero();
        if let Some(b) = base {
            if b.nvars() != fibre.nvars() {
                return Err(Error::NvarsMismatch { left: fibre.nvars(), right: b.nvars() });
            }
            if b != fibre {
                return Err(Error::Precondition(format!("F(x, 0) = {fibre} differs from f = {b}")));
            }
        }
        if fibre.is_zero() {
            return Err(Error::Precondition("F(x, 0) is zero".into()));
        }
        Ok(DeformationInstance { family, base: fibre, m, extension })
    }

    /// The t-constant extension `H(x, t) = h(x)`.
    pub fn constant_extension(family: Poly, base: Option<Poly>, h: &LogFormRep) -> Result<Self> {
        let ext = h.h.extend_vars(1);
        Self::new(family, base, h.m, ext)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationRay {
    pub ray: Vec<i64>,
    /// `exceptional`, `coordinate` (an x-axis), or `parameter` (the t-axis).
    pub kind: &'static str,
    /// `nu_H`; absent when `H = 0`.
    pub nu_h: Option<i64>,
    /// `nu_F`.
    pub nu_f: i64,
    /// `<w, 1> - 1`.
    pub b: i64,
    /// `nu_H + m b - m nu_F`.
    pub value: Option<i64>,
    pub threshold: i64,
    /// `nu_H >= m` on x-axis rays.
    pub strict_transform: Option<bool>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanStats {
    pub rays: usize,
    pub cones: usize,
    pub dual_fan_rays: usize,
    pub triangulated_cones: usize,
    pub subdivisions: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationReport {
    pub m: u32,
    pub pass: bool,
    pub verdict: String,
    pub fan: FanStats,
    pub rays: Vec<DeformationRay>,
}

/// Checks the pole order of `H (dx dt)^m / F^m` along every ray of the
/// regularized dual fan of `Delta_F`.
pub fn deformation_extension_check(inst: &DeformationInstance) -> Result<DeformationReport> {
    let big_f = &inst.family;
    // F(x, 0) = f carries the x-axis points; a pure power of t is not needed
    if !inst.base.axis_condition() {
        return Err(Error::NonToric(
            "F(x, 0) violates the axis condition; non-toric deformation is out of scope".into(),
        ));
    }
    let np = newton_polyhedron(big_f)?;
    let sigma0 = dual_fan(&np)?;
    let (sigma, stats) = regularize_with(&sigma0, &RegularizeConfig::default())?;
    let n1 = big_f.nvars();
    let m = inst.m as i64;
    let rays: Vec<DeformationRay> = sigma
        .rays()
        .iter()
        .map(|w| {
            let nu_h = inst.extension.min_dot(w);
            let nu_f = big_f.min_dot(w).expect("F is nonzero");
            let b = w.iter().sum::<i64>() - 1;
            let value = nu_h.map(|x| x + m * b - m * nu_f);
            let coordinate = is_coordinate_ray(w);
            let kind = if !coordinate {
                "exceptional"
            } else if w[n1 - 1] != 0 {
                "parameter"
            } else {
                "coordinate"
            };
            let strict = (kind == "coordinate").then(|| nu_h.is_none_or(|x| x >= m));
            let pass = value.is_none_or(|x| x >= -m) && strict.unwrap_or(true);
            DeformationRay {
                ray: w.clone(),
                kind,
                nu_h,
                nu_f,
                b,
                value,
                threshold: -m,
                strict_transform: strict,
                pass,
            }
        })
        .collect();
    let pass = rays.iter().all(|r| r.pass);
    let verdict = if pass {
        "H extends h with log poles along the toric resolution".to_string()
    } else {
        let bad: Vec<String> = rays.iter().filter(|r| !r.pass).map(|r| format!("{:?}", r.ray)).collect();
        format!("H fails the pole-order bound on rays {}", bad.join(", "))
    };
    Ok(DeformationReport {
        m: inst.m,
        pass,
        verdict,
        fan: FanStats {
            rays: sigma.rays().len(),
            cones: sigma.cones().len(),
            dual_fan_rays: sigma0.rays().len(),
            triangulated_cones: stats.triangulated_cones,
            subdivisions: stats.subdivisions,
        },
        rays,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    fn p(s: &str, n: usize) -> Poly {
        parse_poly(s, n).unwrap()
    }

    #[test]
    fn a1_family_passes() {
        let inst = DeformationInstance::new(
            p("x1^2+x2^2+x3^2+x4", 4),
            Some(p("x1^2+x2^2+x3^2", 3)),
            1,
            p("x1*x2*x3", 4),
        )
        .unwrap();
        let r = deformation_extension_check(&inst).unwrap();
        assert!(r.pass, "{}", r.verdict);
        let w = r.rays.iter().find(|x| x.ray == vec![1, 1, 1, 2]).unwrap();
        assert_eq!((w.nu_h, w.b, w.nu_f, w.value), (Some(3), 4, 2, Some(5)));
        for i in 0..3 {
            let mut e = vec![0; 4];
            e[i] = 1;
            let c = r.rays.iter().find(|x| x.ray == e).unwrap();
            assert_eq!((c.nu_h, c.strict_transform), (Some(1), Some(true)));
        }
    }

    #[test]
    fn brieskorn_family_passes() {
        let h = LogFormRep::new(p("x1*x2*x3", 3), 1).unwrap();
        let inst =
            DeformationInstance::constant_extension(p("x1^2+x2^3+x3^5+x4*x1*x2*x3", 4), None, &h).unwrap();
        let r = deformation_extension_check(&inst).unwrap();
        assert!(r.pass, "{}", r.verdict);
        // Delta_F = Delta_f x R_+, so the weight of the compact facet of f appears with t-entry 0
        let w = r.rays.iter().find(|x| x.ray == vec![15, 10, 6, 0]).unwrap();
        assert_eq!((w.nu_h, w.nu_f, w.b, w.value), (Some(31), 30, 30, Some(31)));
    }

    #[test]
    fn non_toric_rejected() {
        let inst = DeformationInstance::new(p("x1*x2+x3^2+x4", 4), None, 1, Poly::one(4)).unwrap();
        assert!(matches!(deformation_extension_check(&inst), Err(Error::NonToric(_))));
    }

    #[test]
    fn constant_h_rejected() {
        let inst = DeformationInstance::new(p("x1^2+x2^2+x3^2+x4", 4), None, 1, Poly::one(4)).unwrap();
        let r = deformation_extension_check(&inst).unwrap();
        assert!(!r.pass);
        assert!(r.rays.iter().filter(|x| !x.pass).all(|x| x.kind == "coordinate"));
    }

    #[test]
    fn base_mismatch() {
        let e = DeformationInstance::new(p("x1^2+x2^2+x3", 3), Some(p("x1^2", 2)), 1, Poly::one(3));
        assert!(matches!(e, Err(Error::Precondition(_))));
    }
}
