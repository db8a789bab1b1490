use std::path::PathBuf;

use anyhow::bail;
use serde::Serialize;
use serde_json::{json, Value};

use newtonlog_core::filtration::{
    implication_trials, logform_basis, normalization_trials, TrialConfig, TrialReport,
};
use newtonlog_core::logforms::{monomial_log_condition, rounding_exhaustive};
use newtonlog_core::nondegen::{SearchConfig, DEFAULT_MAX_EVALUATIONS};
use newtonlog_core::{
    check_nondegenerate, dual_fan, lemma1_verify, newton_polyhedron, regularize, Exponent, IdealVariant,
    LogFormChecker, LogFormRep, NondegeneracyStatus, Poly,
};

use crate::input::{nonzero, read_corpus, read_poly};
use crate::report::{emit, Output};
use crate::{OutArgs, PolyArgs};

#[derive(clap::Args, Debug, Clone, Serialize)]
pub struct Args {
    #[command(flatten)]
    pub poly: PolyArgs,
    /// File with one polynomial per line (`#` starts a comment line).
    #[arg(long, conflicts_with_all = ["poly", "input"])]
    pub corpus: Option<PathBuf>,
    /// Largest m for the log-form equivalence sweep.
    #[arg(long, default_value_t = 3)]
    pub m: u32,
    /// Total-degree cutoff for the log-form equivalence sweep.
    #[arg(long, default_value_t = 8)]
    pub degree: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Randomized implication trials per polynomial and ideal.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Normalization round trips per polynomial and m in {1, 2}.
    #[arg(long, default_value_t = 50)]
    pub norm_trials: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [101u64, 103, 211])]
    pub primes: Vec<u64>,
    #[arg(long, default_value_t = DEFAULT_MAX_EVALUATIONS)]
    pub max_evaluations: u64,
    /// Largest a in the injectivity sweep (k runs over 1..=3).
    #[arg(long, default_value_t = 3)]
    pub a_max: u32,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

struct PolyCheck {
    json: Value,
    text: String,
    failed: bool,
}

fn trial_summary(r: &TrialReport) -> Value {
    json!({
        "trials": r.trials,
        "premise_true": r.premise_true,
        "conclusion_true": r.conclusion_true,
        "within_hypothesis": r.within_hypothesis,
        "counterexamples": r.counterexamples,
    })
}

fn check_one(label: &str, f: &Poly, args: &Args, warned: &mut bool) -> anyhow::Result<PolyCheck> {
    let n = f.nvars();
    let np = newton_polyhedron(f)?;
    let mut text = format!("== {label}\n");
    let mut failed = false;

    let cfg = SearchConfig { primes: args.primes.clone(), max_evaluations: args.max_evaluations };
    let verdict = check_nondegenerate(f, &cfg)?;
    text += &match &verdict.status {
        NondegeneracyStatus::Nondegenerate { confidence, .. } => format!("nondegenerate: {confidence}\n"),
        NondegeneracyStatus::Degenerate { face, witness } => {
            format!("degenerate on face {:?}: witness {}\n", face.vertices, serde_json::to_string(witness)?)
        }
        NondegeneracyStatus::Unknown { faces } => format!("unknown: {} faces over budget\n", faces.len()),
    };

    if !f.axis_condition() {
        text += "axis condition fails: filtration and log-form sweeps skipped\n";
        let json = json!({
            "polynomial": f.to_string(),
            "nvars": n,
            "axis_condition": false,
            "nondegeneracy": verdict,
            "skipped": "axis condition fails",
            "pass": true,
        });
        return Ok(PolyCheck { json, text, failed });
    }

    // injectivity
    let mut cases = 0;
    let mut inj_fail = Vec::new();
    for axis in 0..n {
        for a in 0..=args.a_max {
            for k in 1..=3 {
                cases += 1;
                match lemma1_verify(f, a, k, axis) {
                    Ok(r) if r.injective => {}
                    Ok(r) => inj_fail.push(serde_json::to_value(r)?),
                    Err(e) => {
                        inj_fail.push(json!({ "axis": axis + 1, "a": a, "k": k, "error": e.to_string() }))
                    }
                }
            }
        }
    }
    text += &format!("injectivity: {}/{cases}\n", cases - inj_fail.len());
    failed |= !inj_fail.is_empty();

    // implication trials
    let tcfg = TrialConfig { seed: args.seed, trials: args.trials, ..Default::default() };
    let mut axis_impl = Vec::new();
    for axis in 0..n {
        match implication_trials(f, &tcfg, IdealVariant::SingleAxis(axis)) {
            Ok(r) => {
                failed |= !r.all_hold();
                text += &format!(
                    "axis {} implication: {}/{} conclusions hold\n",
                    axis + 1,
                    r.conclusion_true,
                    r.trials
                );
                axis_impl.push(json!({ "axis": axis + 1, "summary": trial_summary(&r) }));
            }
            Err(e) => {
                failed = true;
                axis_impl.push(json!({ "axis": axis + 1, "error": e.to_string() }));
            }
        }
    }
    let all_axes = match implication_trials(f, &tcfg, IdealVariant::AllAxes) {
        Ok(r) => {
            failed |= !r.all_hold();
            text += &format!("all-axes implication: {}/{} conclusions hold\n", r.conclusion_true, r.trials);
            trial_summary(&r)
        }
        Err(e) => {
            failed = true;
            json!({ "error": e.to_string() })
        }
    };

    // log-form equivalence on monomials
    let fan = regularize(&dual_fan(&np)?)?;
    let checker = LogFormChecker::new(f, &fan)?;
    let mut checked = 0usize;
    let mut mismatches = Vec::new();
    let mut basis_sizes = Vec::new();
    for m in 1..=args.m {
        if args.degree < n as u64 * m as u64 && !*warned {
            eprintln!("warning: degree cutoff {} is below n*m; the log-form basis is empty", args.degree);
            *warned = true;
        }
        let basis = logform_basis(&np, m, args.degree);
        let mut passing = Vec::new();
        for b in monomials_upto(n, args.degree) {
            let h = Poly::monic_monomial(b.as_slice().to_vec());
            let lhs = checker.is_log_form(&LogFormRep::new(h, m)?)?;
            let rhs = monomial_log_condition(f, &b.to_i64(), m)?;
            checked += 1;
            if lhs != rhs {
                mismatches.push(json!({ "m": m, "exponent": b, "is_log_form": lhs, "direct": rhs }));
            }
            if lhs {
                passing.push(b);
            }
        }
        passing.sort();
        if passing != basis {
            mismatches.push(json!({ "m": m, "basis_mismatch": true }));
        }
        basis_sizes.push(json!({ "m": m, "size": basis.len() }));
    }
    text += &format!("log-form equivalence: {} monomial checks, {} mismatches\n", checked, mismatches.len());
    failed |= !mismatches.is_empty();

    // normalization round trips
    let ncfg = TrialConfig { seed: args.seed, trials: args.norm_trials, ..Default::default() };
    let mut normalization = Vec::new();
    for m in [1, 2] {
        match normalization_trials(f, m, &ncfg) {
            Ok(r) => {
                failed |= r.passed != r.trials;
                text += &format!("normalization m={m}: {}/{}\n", r.passed, r.trials);
                normalization
                    .push(json!({ "m": m, "trials": r.trials, "passed": r.passed, "failures": r.failures }));
            }
            Err(e) => {
                failed = true;
                normalization.push(json!({ "m": m, "error": e.to_string() }));
            }
        }
    }

    let json = json!({
        "polynomial": f.to_string(),
        "nvars": n,
        "axis_condition": true,
        "nondegeneracy": verdict,
        "injectivity": { "cases": cases, "failures": inj_fail },
        "axis_implication": axis_impl,
        "all_axes_implication": all_axes,
        "logform_equivalence": {
            "m_max": args.m,
            "degree": args.degree,
            "checked": checked,
            "mismatches": mismatches,
            "basis_sizes": basis_sizes,
        },
        "normalization": normalization,
        "pass": !failed,
    });
    Ok(PolyCheck { json, text, failed })
}

/// All exponents of total degree at most `d`, graded-lex.
fn monomials_upto(n: usize, d: u64) -> Vec<Exponent> {
    fn go(c: &mut Vec<u32>, n: usize, left: u64, out: &mut Vec<Exponent>) {
        if c.len() == n {
            out.push(Exponent::new(c.clone()));
            return;
        }
        for x in 0..=left {
            c.push(x as u32);
            go(c, n, left - x, out);
            c.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), n, d, &mut out);
    out.sort();
    out
}

pub fn run(args: &Args) -> anyhow::Result<Output> {
    if args.m == 0 {
        bail!("--m must be positive");
    }
    if args.primes.is_empty() || args.primes.iter().any(|&p| p < 3 || !is_prime(p)) {
        bail!("--primes must be a nonempty list of odd primes");
    }
    let polys: Vec<(String, Poly)> = match &args.corpus {
        Some(path) => read_corpus(path, args.poly.nvars)?,
        None => {
            let f = read_poly(&args.poly)?;
            vec![(f.to_string(), f)]
        }
    };
    let mut per = Vec::new();
    let mut text = String::new();
    let mut failed = false;
    let mut warned = false;
    for (label, f) in &polys {
        let f = nonzero(f.clone())?;
        let c = check_one(label, &f, args, &mut warned)?;
        failed |= c.failed;
        text += &c.text;
        per.push(c.json);
    }
    let sweep = rounding_exhaustive();
    failed |= !sweep.violations.is_empty();
    text += &format!("rounding: {} cases, {} violations\n", sweep.cases, sweep.violations.len());
    let result = json!({
        "polynomials": per,
        "rounding": sweep,
    });
    emit("check", args, args.out.format, result, text, failed)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}
