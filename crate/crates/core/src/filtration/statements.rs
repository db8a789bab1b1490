use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::{diagonal, in_sum_space, MembershipCertificate, MonomialSumSpace};
use crate::error::{Error, Result};
use crate::exactpoly::{Exponent, Poly, Rational};
use crate::linalg;
use crate::polyhedral::{
    build_delta1, enumerate_complement, newton_polyhedron, Delta1Region, Region, DEFAULT_ENUMERATION_CAP,
};

const RANK_PRIME: u64 = (1 << 61) - 1;

/// Monomials spanning `P / (F_1^a + (x_axis^k))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientBasis {
    pub a: u32,
    pub k: u32,
    /// 0-based.
    pub axis: usize,
    pub exponents: Vec<Exponent>,
}

impl QuotientBasis {
    pub fn new(delta1: &Delta1Region, a: u32, k: u32) -> Result<Self> {
        let axis = delta1.axis();
        let exponents = enumerate_complement(
            delta1,
            &Rational::from_integer(a.into()),
            &[(axis, k)],
            DEFAULT_ENUMERATION_CAP,
        )?;
        Ok(QuotientBasis { a, k, axis, exponents })
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjectivityReport {
    pub a: u32,
    pub k: u32,
    /// 1-based in JSON.
    #[serde(serialize_with = "one_based")]
    pub axis: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub injective: bool,
    /// A nonzero class in the source killed by `f`, if any.
    pub kernel: Option<Poly>,
}

fn one_based<S: serde::Serializer>(i: &usize, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(*i as u64 + 1)
}

/// Exact rank of multiplication by `f` from `P/(F_1^a + (x_i^k))` to
/// `P/(F_1^{a+1} + (x_i^k))`.
pub fn lemma1_verify(f: &Poly, a: u32, k: u32, axis: usize) -> Result<InjectivityReport> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    if !f.axis_condition() {
        return Err(Error::Precondition("f does not satisfy the axis condition".into()));
    }
    let np = newton_polyhedron(f)?;
    let d1 = build_delta1(&np, axis)?;
    injectivity_with(f, &d1, a, k)
}

pub(crate) fn injectivity_with(f: &Poly, d1: &Delta1Region, a: u32, k: u32) -> Result<InjectivityReport> {
    let axis = d1.axis();
    let src = QuotientBasis::new(d1, a, k)?;
    let dst = QuotientBasis::new(d1, a + 1, k)?;
    let index: BTreeMap<&Exponent, usize> = dst.exponents.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let next = Rational::from_integer((a + 1).into());
    let mut columns = Vec::with_capacity(src.len());
    for b in &src.exponents {
        let mut col = vec![Rational::zero(); dst.len()];
        for (e, c) in f.terms() {
            let t = e.add(b);
            if t[axis] >= k || d1.contains_exponent(&t, &next) {
                continue;
            }
            let row = *index.get(&t).ok_or_else(|| {
                Error::Precondition(format!("product exponent {t:?} missing from target basis"))
            })?;
            col[row] += c;
        }
        columns.push(col);
    }
    // full rank mod p already certifies full rank over Q
    let (rank, kernel) = match linalg::column_rank_mod_p(&columns, dst.len(), RANK_PRIME) {
        Some(r) if r == columns.len() => (r, None),
        _ => linalg::column_rank_and_kernel(&columns, dst.len()),
    };
    let kernel = kernel.map(|x| {
        let terms = src.exponents.iter().zip(x).filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e.clone(), c));
        Poly::from_terms(f.nvars(), terms).expect("basis exponents have the right length")
    });
    Ok(InjectivityReport {
        a,
        k,
        axis,
        source_dim: src.len(),
        target_dim: dst.len(),
        rank,
        injective: rank == src.len(),
        kernel,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "axis", rename_all = "snake_case")]
pub enum IdealVariant {
    /// `(x_i^k)`, 0-based axis.
    SingleAxis(usize),
    /// `((x_1 ... x_n)^k)`.
    AllAxes,
}

impl IdealVariant {
    pub fn generator(&self, nvars: usize, k: u32) -> Exponent {
        match *self {
            IdealVariant::SingleAxis(i) => {
                let mut e = vec![0; nvars];
                e[i] = k;
                Exponent::new(e)
            }
            IdealVariant::AllAxes => diagonal(nvars, k),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImplicationReport {
    pub a: u32,
    pub k: u32,
    pub variant: IdealVariant,
    pub premise: bool,
    pub conclusion: bool,
    pub holds: bool,
    /// `k <= a`.
    pub within_hypothesis: bool,
    pub axis_condition: bool,
    pub counterexample: bool,
    pub g: Poly,
    pub premise_certificate: MembershipCertificate,
    pub conclusion_certificate: MembershipCertificate,
}

/// Tests `g f in F^a + I  =>  g in F^{a-1} + I` for `I = (x_i^k)` or
/// `((x_1 ... x_n)^k)`.
pub fn lemma23_verify(
    f: &Poly,
    g: &Poly,
    a: u32,
    k: u32,
    variant: IdealVariant,
) -> Result<ImplicationReport> {
    if let IdealVariant::SingleAxis(i) = variant {
        if i >= f.nvars() {
            return Err(Error::VariableOutOfRange { index: i + 1, nvars: f.nvars() });
        }
    }
    let np = newton_polyhedron(f)?;
    implication_with(&np, f, g, a, k, variant)
}

pub(crate) fn implication_with(
    np: &dyn Region,
    f: &Poly,
    g: &Poly,
    a: u32,
    k: u32,
    variant: IdealVariant,
) -> Result<ImplicationReport> {
    let gf = g.try_mul(f)?;
    let gens = vec![variant.generator(f.nvars(), k)];
    let at = |x: u32| Rational::from_integer(x.into());
    let premise = in_sum_space(&gf, &MonomialSumSpace::new(np, at(a), gens.clone()));
    let conclusion = in_sum_space(g, &MonomialSumSpace::new(np, at(a.saturating_sub(1)), gens));
    let within = k <= a && a >= 1;
    let axis_condition = f.axis_condition();
    Ok(ImplicationReport {
        a,
        k,
        variant,
        premise: premise.holds,
        conclusion: conclusion.holds,
        holds: !premise.holds || conclusion.holds,
        within_hypothesis: within,
        axis_condition,
        counterexample: premise.holds && !conclusion.holds && within && axis_condition,
        g: g.clone(),
        premise_certificate: premise,
        conclusion_certificate: conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    fn p(s: &str, n: usize) -> Poly {
        parse_poly(s, n).unwrap()
    }

    fn exps(v: &[&[u32]]) -> Vec<Exponent> {
        v.iter().map(|e| Exponent::new(e.to_vec())).collect()
    }

    #[test]
    fn cusp_quotient_bases() {
        let f = p("x1^3+x1*x2+x2^3", 2);
        let np = newton_polyhedron(&f).unwrap();
        let d1 = build_delta1(&np, 0).unwrap();
        let b1 = QuotientBasis::new(&d1, 1, 1).unwrap();
        assert_eq!(b1.exponents, exps(&[&[0, 0], &[0, 1], &[0, 2]]));
        let b2 = QuotientBasis::new(&d1, 2, 1).unwrap();
        assert_eq!(b2.len(), 6);
        let b12 = QuotientBasis::new(&d1, 1, 2).unwrap();
        assert_eq!(b12.exponents, exps(&[&[0, 0], &[0, 1], &[0, 2], &[1, 0]]));
    }

    #[test]
    fn injectivity_examples() {
        let f = p("x1^3+x1*x2+x2^3", 2);
        let r = lemma1_verify(&f, 1, 1, 0).unwrap();
        assert_eq!((r.source_dim, r.target_dim, r.rank), (3, 6, 3));
        assert!(r.injective && r.kernel.is_none());
        let r = lemma1_verify(&f, 1, 2, 0).unwrap();
        assert!(r.injective);
        assert_eq!(r.rank, r.source_dim);
        let r = lemma1_verify(&p("x1^2+x2^2+x3^2", 3), 0, 1, 0).unwrap();
        assert_eq!((r.source_dim, r.rank), (0, 0));
        assert!(r.injective);
        assert!(lemma1_verify(&p("x1*x2+x1^2", 2), 1, 1, 0).is_err());
    }

    #[test]
    fn injectivity_detects_kernel() {
        // x1*x2 vanishes modulo x1, so it kills the quotient
        let np = newton_polyhedron(&p("x1^2+x2^2", 2)).unwrap();
        let d1 = build_delta1(&np, 0).unwrap();
        let r = injectivity_with(&p("x1*x2", 2), &d1, 1, 1).unwrap();
        assert_eq!((r.source_dim, r.rank), (2, 0));
        assert!(!r.injective);
        assert!(r.kernel.unwrap().support().all(|e| e[0] == 0));
    }

    #[test]
    fn implication_examples() {
        let f = p("x1^2+x2^2+x3^2", 3);
        let r = lemma23_verify(&f, &p("x2", 3), 1, 1, IdealVariant::AllAxes).unwrap();
        assert!(r.premise && r.conclusion && r.holds && !r.counterexample);
        let r = lemma23_verify(&f, &Poly::zero(3), 2, 1, IdealVariant::SingleAxis(0)).unwrap();
        assert!(r.premise && r.conclusion);
        // premise false: 1 * f is not in F^2 + (x1 x2 x3)
        let r = lemma23_verify(&f, &Poly::one(3), 2, 1, IdealVariant::AllAxes).unwrap();
        assert!(!r.premise && r.holds);
        assert_eq!(r.premise_certificate.failures.len(), 3);
        // outside the proviso k <= a
        let r = lemma23_verify(&f, &p("x2", 3), 1, 2, IdealVariant::AllAxes).unwrap();
        assert!(!r.within_hypothesis);
    }
}
