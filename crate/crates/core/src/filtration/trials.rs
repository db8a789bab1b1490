//! Seeded random trials for the implication and normalization checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::normalize::normalize_representative;
use super::statements::{implication_with, IdealVariant, ImplicationReport};
use crate::error::{Error, Result};
use crate::exactpoly::{Exponent, Poly, Rational};
use crate::polyhedral::{newton_polyhedron, NewtonPolyhedron, Region};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialConfig {
    pub seed: u64,
    pub trials: usize,
    pub k_max: u32,
    pub a_cap: u32,
    pub max_terms: usize,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig { seed: 0, trials: 100, k_max: 3, a_cap: 10, max_terms: 4 }
    }
}

fn trial_rng(seed: u64, i: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64))
}

fn coefficient(rng: &mut impl Rng) -> Rational {
    let c: i64 = rng.gen_range(1..=3);
    let c = if rng.gen_bool(0.5) { -c } else { c };
    Rational::from_integer(c.into())
}

/// Up to `terms` monomials with exponents uniform in `[lo, hi]^n` that pass
/// `keep`, coefficients in `{-3..3} \ {0}`. Gives up on a slot after 64
/// rejected samples.
pub fn random_poly(
    rng: &mut impl Rng,
    nvars: usize,
    lo: u32,
    hi: u32,
    terms: usize,
    mut keep: impl FnMut(&Exponent) -> bool,
) -> Poly {
    let mut out = Vec::new();
    for _ in 0..terms {
        for _ in 0..64 {
            let e = Exponent::new((0..nvars).map(|_| rng.gen_range(lo..=hi)).collect());
            if keep(&e) {
                out.push((e, coefficient(rng)));
                break;
            }
        }
    }
    Poly::from_terms(nvars, out).expect("exponents have length nvars")
}

fn box_top(np: &NewtonPolyhedron) -> u32 {
    let m = np.vertices().iter().flatten().copied().max().unwrap_or(1);
    (2 * m).max(1) as u32
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialReport {
    pub config: TrialConfig,
    pub variant: IdealVariant,
    pub trials: usize,
    pub premise_true: usize,
    pub conclusion_true: usize,
    pub within_hypothesis: usize,
    pub counterexamples: Vec<ImplicationReport>,
}

impl TrialReport {
    pub fn all_hold(&self) -> bool {
        self.counterexamples.is_empty() && self.conclusion_true == self.premise_true
    }
}

/// Trials with the premise true by construction: `a` is the floor of the
/// smallest filtration value among the terms of `g f` outside the ideal
/// (at most `a_cap`), and `k` is lowered to `a` when needed.
pub fn implication_trials(f: &Poly, cfg: &TrialConfig, variant: IdealVariant) -> Result<TrialReport> {
    let np = newton_polyhedron(f)?;
    let n = f.nvars();
    let top = box_top(&np);
    let mut rep = TrialReport {
        config: cfg.clone(),
        variant,
        trials: 0,
        premise_true: 0,
        conclusion_true: 0,
        within_hypothesis: 0,
        counterexamples: Vec::new(),
    };
    for i in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, i);
        let mut k = rng.gen_range(1..=cfg.k_max.max(1));
        let nterms = rng.gen_range(1..=cfg.max_terms.max(1));
        let g = random_poly(&mut rng, n, 0, top, nterms, |_| true);
        let gf = g.try_mul(f)?;
        let gen = variant.generator(n, k);
        let a = gf
            .support()
            .filter(|b| !gen.divides(b))
            .map(|b| np.filtration_value(b).floor().to_integer())
            .min()
            .map_or(cfg.a_cap as i64, |x| x.try_into().unwrap_or(i64::MAX).min(cfg.a_cap as i64));
        if a < 1 {
            return Err(Error::Precondition(format!("trial {i}: g f has a term of filtration value < 1")));
        }
        let a = a as u32;
        k = k.min(a);
        let r = implication_with(&np, f, &g, a, k, variant)?;
        if !r.premise {
            return Err(Error::Precondition(format!("trial {i}: premise false by construction")));
        }
        rep.trials += 1;
        rep.premise_true += 1;
        rep.conclusion_true += r.conclusion as usize;
        rep.within_hypothesis += r.within_hypothesis as usize;
        if r.counterexample || !r.conclusion {
            rep.counterexamples.push(r);
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalizationTrials {
    pub config: TrialConfig,
    pub m: u32,
    pub trials: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

/// Round trips `h = h0 + q f` with `h0 in F^m ∩ ((x_1...x_n)^m)`,
/// `q in F^{m-1}` and witness `g = q + r`, `r` in the ideal.
pub fn normalization_trials(f: &Poly, m: u32, cfg: &TrialConfig) -> Result<NormalizationTrials> {
    let np = newton_polyhedron(f)?;
    let n = f.nvars();
    let top = box_top(&np);
    let am = Rational::from_integer(m.into());
    let am1 = Rational::from_integer(m.saturating_sub(1).into());
    let mut rep = NormalizationTrials { config: cfg.clone(), m, trials: 0, passed: 0, failures: Vec::new() };
    for i in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, i);
        let t = cfg.max_terms.max(1);
        let (c0, c1, c2) = (rng.gen_range(1..=t), rng.gen_range(1..=t), rng.gen_range(0..=t));
        let h0 = random_poly(&mut rng, n, m, m + top, c0, |b| np.contains_exponent(b, &am));
        let q = random_poly(&mut rng, n, 0, top, c1, |b| np.contains_exponent(b, &am1));
        let r = random_poly(&mut rng, n, m, m + top, c2, |_| true);
        let g = q.try_add(&r)?;
        let h = h0.try_add(&q.try_mul(f)?)?;
        rep.trials += 1;
        match normalize_representative(f, &h, &g, m) {
            Ok(out) => {
                let same = h.try_sub(&out.h_prime)?.is_divisible_by(f)?;
                if same {
                    rep.passed += 1;
                } else {
                    rep.failures.push(format!("trial {i}: class changed"));
                }
            }
            Err(e) => rep.failures.push(format!("trial {i}: {e}")),
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    #[test]
    fn seeded_trials_are_reproducible() {
        let f = parse_poly("x1^3+x1*x2+x2^3", 2).unwrap();
        let cfg = TrialConfig { seed: 7, trials: 20, ..Default::default() };
        let a = implication_trials(&f, &cfg, IdealVariant::AllAxes).unwrap();
        let b = implication_trials(&f, &cfg, IdealVariant::AllAxes).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.trials, 20);
        assert!(a.all_hold(), "{:?}", a.counterexamples);
        let s = implication_trials(&f, &cfg, IdealVariant::SingleAxis(1)).unwrap();
        assert!(s.all_hold());
    }

    #[test]
    fn normalization_round_trip() {
        let f = parse_poly("x1^2+x2^2+x3^2", 3).unwrap();
        for m in [1, 2] {
            let cfg = TrialConfig { seed: 3, trials: 10, ..Default::default() };
            let r = normalization_trials(&f, m, &cfg).unwrap();
            assert_eq!(r.passed, 10, "{:?}", r.failures);
        }
    }
}
