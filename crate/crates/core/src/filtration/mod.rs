//! Monomial filtrations `F^a = L(a Delta)` and `F_1^a = L(a Delta_1)`,
//! membership in `F^a + (monomial ideal)`, and the finite linear algebra
//! behind the filtration statements.

mod normalize;
mod statements;
mod trials;

use serde::Serialize;

use crate::exactpoly::{Exponent, Poly, Rational};
use crate::polyhedral::{NewtonPolyhedron, Region};

pub use normalize::{normalize_representative, NormalizeReport};
pub use statements::{
    lemma1_verify, lemma23_verify, IdealVariant, ImplicationReport, InjectivityReport, QuotientBasis,
};
pub use trials::{
    implication_trials, normalization_trials, random_poly, NormalizationTrials, TrialConfig, TrialReport,
};

/// `F^a + (ideal_gens)` for a region and a list of monomial generators.
pub struct MonomialSumSpace<'r> {
    pub dilation: Rational,
    pub region: &'r dyn Region,
    pub ideal_gens: Vec<Exponent>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Dilate,
    /// Divisible by the generator with this index.
    Ideal(usize),
    Both(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipCertificate {
    pub holds: bool,
    pub certified: Vec<(Exponent, Branch)>,
    pub failures: Vec<Exponent>,
}

impl<'r> MonomialSumSpace<'r> {
    pub fn new(region: &'r dyn Region, dilation: Rational, ideal_gens: Vec<Exponent>) -> Self {
        MonomialSumSpace { dilation, region, ideal_gens }
    }

    pub fn contains_monomial(&self, b: &Exponent) -> Option<Branch> {
        let dil = self.region.contains_exponent(b, &self.dilation);
        let gen = self.ideal_gens.iter().position(|g| g.divides(b));
        match (dil, gen) {
            (true, Some(i)) => Some(Branch::Both(i)),
            (true, None) => Some(Branch::Dilate),
            (false, Some(i)) => Some(Branch::Ideal(i)),
            (false, None) => None,
        }
    }
}

/// Termwise membership; the space is spanned by monomials.
pub fn in_sum_space(p: &Poly, s: &MonomialSumSpace<'_>) -> MembershipCertificate {
    let mut certified = Vec::new();
    let mut failures = Vec::new();
    for b in p.support() {
        match s.contains_monomial(b) {
            Some(br) => certified.push((b.clone(), br)),
            None => failures.push(b.clone()),
        }
    }
    MembershipCertificate { holds: failures.is_empty(), certified, failures }
}

/// `(p1, p2)` with `p1` the terms in `a * Delta` and `p2` the rest.
pub fn split_by_support(p: &Poly, a: &Rational, np: &NewtonPolyhedron) -> (Poly, Poly) {
    let p1 = p.filter_terms(|b| np.contains_exponent(b, a));
    let p2 = p.filter_terms(|b| !np.contains_exponent(b, a));
    (p1, p2)
}

/// `(k, ..., k)`, the exponent of `(x_1 ... x_n)^k`.
pub fn diagonal(nvars: usize, k: u32) -> Exponent {
    Exponent::new(vec![k; nvars])
}

/// Exponents `b` with `|b| <= cutoff`, `b >= (m, ..., m)` and `b` in
/// `m * Delta`, in graded-lex order. Empty when `cutoff < n * m`.
pub fn logform_basis(np: &NewtonPolyhedron, m: u32, cutoff: u64) -> Vec<Exponent> {
    let n = np.nvars();
    let floor = n as u64 * m as u64;
    if cutoff < floor {
        return Vec::new();
    }
    let a = Rational::from_integer(m.into());
    let mut out = Vec::new();
    let mut c = vec![0u32; n];
    compositions_upto(&mut c, 0, cutoff - floor, &mut |c| {
        let b = Exponent::new(c.iter().map(|x| x + m).collect());
        if np.contains_exponent(&b, &a) {
            out.push(b);
        }
    });
    out.sort();
    out
}

fn compositions_upto(c: &mut [u32], i: usize, budget: u64, f: &mut impl FnMut(&[u32])) {
    if i == c.len() {
        f(c);
        return;
    }
    for x in 0..=budget {
        c[i] = x as u32;
        compositions_upto(c, i + 1, budget - x, f);
    }
    c[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;
    use crate::polyhedral::newton_polyhedron;

    fn p(s: &str, n: usize) -> Poly {
        parse_poly(s, n).unwrap()
    }

    fn one() -> Rational {
        Rational::from_integer(1.into())
    }

    #[test]
    fn sum_space_membership() {
        let np = newton_polyhedron(&p("x1^2+x2^2+x3^2", 3)).unwrap();
        let s = MonomialSumSpace::new(&np, one(), vec![diagonal(3, 1)]);
        let c = in_sum_space(&p("x1*x2*x3", 3), &s);
        assert!(c.holds);
        assert_eq!(c.certified[0].1, Branch::Both(0));
        let c = in_sum_space(&p("x2", 3), &s);
        assert!(!c.holds);
        assert_eq!(c.failures, vec![Exponent::new(vec![0, 1, 0])]);
        assert!(in_sum_space(&Poly::zero(3), &s).holds);
        let c = in_sum_space(
            &p("x1^5+x2", 3),
            &MonomialSumSpace::new(&np, one(), vec![Exponent::new(vec![0, 1, 0])]),
        );
        assert!(c.holds);
        assert_eq!(
            c.certified.iter().map(|t| t.1).collect::<Vec<_>>(),
            vec![Branch::Ideal(0), Branch::Dilate]
        );
    }

    #[test]
    fn split_examples() {
        let np = newton_polyhedron(&p("x1^2+x2^2+x3^2", 3)).unwrap();
        let (a, b) = split_by_support(&p("x1*x2*x3+x2", 3), &one(), &np);
        assert_eq!((a, b), (p("x1*x2*x3", 3), p("x2", 3)));
        let f = p("x1^2+x2^2", 3);
        assert_eq!(split_by_support(&f, &one(), &np), (f.clone(), Poly::zero(3)));
        assert_eq!(split_by_support(&Poly::zero(3), &one(), &np), (Poly::zero(3), Poly::zero(3)));
        // 0 * Delta is the orthant
        let z = Rational::from_integer(0.into());
        assert_eq!(split_by_support(&p("1+x2", 3), &z, &np).1, Poly::zero(3));
    }

    #[test]
    fn logform_basis_examples() {
        let unit = vec![Exponent::new(vec![1, 1, 1])];
        let np = newton_polyhedron(&p("x1^2+x2^2+x3^2", 3)).unwrap();
        assert_eq!(logform_basis(&np, 1, 3), unit);
        let np = newton_polyhedron(&p("x1^2+x2^3+x3^5", 3)).unwrap();
        assert_eq!(logform_basis(&np, 1, 3), unit);
        assert!(logform_basis(&np, 1, 2).is_empty());
        // b >= (2,2,2) and |b| <= 7
        let b = logform_basis(&newton_polyhedron(&p("x1^2+x2^2+x3^2", 3)).unwrap(), 2, 7);
        assert_eq!(b.len(), 4);
    }

    #[test]
    fn filtration_is_multiplicative() {
        let np = newton_polyhedron(&p("x1^3+x1*x2+x2^3", 2)).unwrap();
        for u in 0..6u32 {
            for w in 0..6u32 {
                let b1 = Exponent::new(vec![u, 5 - u]);
                let b2 = Exponent::new(vec![w, w / 2]);
                let s = np.filtration_value(&b1) + np.filtration_value(&b2);
                assert!(np.contains_exponent(&b1.add(&b2), &s));
            }
        }
    }
}
