use serde::Serialize;

use crate::exactpoly::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundingReport {
    pub m: u32,
    pub a: i64,
    pub b: i64,
    pub nu: i64,
    pub lambda: String,
    pub premise: bool,
    pub conclusion: bool,
    pub implication: bool,
    /// `0 < lambda < 1 / (m a)`.
    pub within_hypothesis: bool,
}

/// `(lambda - 1) a + nu/m + b > -1  =>  nu/m + b - a >= -1`, exactly.
pub fn rounding_implication(m: u32, a: i64, b: i64, nu: i64, lambda: &Rational) -> RoundingReport {
    let q = |x: i64| Rational::from_integer(x.into());
    let mm = q(m as i64);
    let one = q(1);
    let tail = Rational::new(nu.into(), (m as i64).into()) + q(b);
    let premise = (lambda - &one) * q(a) + &tail > -one.clone();
    let conclusion = tail - q(a) >= -one.clone();
    let within = *lambda > q(0) && a > 0 && m > 0 && lambda * &mm * q(a) < one;
    RoundingReport {
        m,
        a,
        b,
        nu,
        lambda: lambda.to_string(),
        premise,
        conclusion,
        implication: !premise || conclusion,
        within_hypothesis: within,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundingSweep {
    pub cases: usize,
    pub premise_true: usize,
    pub violations: Vec<RoundingReport>,
}

/// All `m <= 3`, `1 <= a <= 4`, `|b| <= 4`, `|nu| <= 12` and
/// `lambda = q / (8 m a)` for `1 <= q <= 7`.
pub fn rounding_exhaustive() -> RoundingSweep {
    let mut sweep = RoundingSweep { cases: 0, premise_true: 0, violations: Vec::new() };
    for m in 1..=3u32 {
        for a in 1..=4i64 {
            for b in -4..=4i64 {
                for nu in -12..=12i64 {
                    for qn in 1..=7i64 {
                        let lambda = Rational::new(qn.into(), (8 * m as i64 * a).into());
                        let r = rounding_implication(m, a, b, nu, &lambda);
                        sweep.cases += 1;
                        sweep.premise_true += r.premise as usize;
                        if !r.implication {
                            sweep.violations.push(r);
                        }
                    }
                }
            }
        }
    }
    sweep
}
