use serde::Serialize;

use super::{diagonal, in_sum_space, split_by_support, MonomialSumSpace};
use crate::error::{Error, Result};
use crate::exactpoly::{Poly, Rational};
use crate::polyhedral::{newton_polyhedron, Region};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizeReport {
    pub m: u32,
    pub g1: Poly,
    pub g2: Poly,
    /// `h - g1 f`, in `F^m` and in `((x_1 ... x_n)^m)`, congruent to `h`
    /// modulo `f`.
    pub h_prime: Poly,
}

/// Replaces a representative `h in F^m` with `h - g f in ((x_1...x_n)^m)`
/// by `h - g_1 f`, where `g_1` is the part of `g` in `(m-1) Delta`.
pub fn normalize_representative(f: &Poly, h: &Poly, g: &Poly, m: u32) -> Result<NormalizeReport> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    let np = newton_polyhedron(f)?;
    let n = f.nvars();
    let at = |x: u32| Rational::from_integer(x.into());
    let ideal = diagonal(n, m);
    let fm = MonomialSumSpace::new(&np, at(m), vec![]);
    let in_ideal = |p: &Poly| p.support().all(|b| ideal.divides(b));

    let bad = in_sum_space(h, &fm);
    if !bad.holds {
        return Err(Error::Precondition(format!("h has terms outside {m} * Delta: {:?}", bad.failures)));
    }
    let r = h.try_sub(&g.try_mul(f)?)?;
    if !in_ideal(&r) {
        return Err(Error::Precondition(format!("h - g f = {r} is not in ((x_1 ... x_n)^{m})")));
    }
    let (g1, g2) = split_by_support(g, &at(m - 1), &np);
    if !in_ideal(&g2) {
        return Err(Error::Counterexample(format!(
            "f = {f}, h = {h}, g = {g}, m = {m}: g2 = {g2} is not in ((x_1 ... x_n)^{m})"
        )));
    }
    let h_prime = h.try_sub(&g1.try_mul(f)?)?;
    let ok_f = h_prime.support().all(|b| np.contains_exponent(b, &at(m)));
    let ok_ideal = in_ideal(&h_prime);
    let ok_class = h.try_sub(&h_prime)?.is_divisible_by(f)?;
    if !(ok_f && ok_ideal && ok_class) {
        return Err(Error::Counterexample(format!(
            "f = {f}, h = {h}, g = {g}, m = {m}: h' = {h_prime} fails \
             (in F^m: {ok_f}, in ideal: {ok_ideal}, same class: {ok_class})"
        )));
    }
    Ok(NormalizeReport { m, g1, g2, h_prime })
}
