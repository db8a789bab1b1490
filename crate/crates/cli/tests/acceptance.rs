//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{corpus, Entry};
use newtonlog_core::filtration::{implication_trials, normalization_trials, TrialConfig};
use newtonlog_core::logforms::{monomial_log_condition, rounding_exhaustive};
use newtonlog_core::{
    build_delta1, check_nondegenerate, dual_fan, lemma1_verify, logform_basis, newton_polyhedron, parse_poly,
    refines, regularize, Exponent, IdealVariant, LogFormChecker, LogFormRep, NondegeneracyStatus, Poly,
    Rational, Region, SearchConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Result<Duration, String> {
    let el = t.elapsed();
    ensure(el < limit, || format!("took {el:?}, limit {limit:?}"))?;
    Ok(el)
}

// ---------------------------------------------------------------------------
// 1. facet oracle

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..].iter().map(|r| [&r[..j], &r[j + 1..]].concat()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Generalized cross product of `n - 1` vectors in dimension `n`.
fn cross(rows: &[Vec<i128>], n: usize) -> Vec<i128> {
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = rows.iter().map(|r| [&r[..j], &r[j + 1..]].concat()).collect();
            let s = if (j + n - 1).is_multiple_of(2) { 1 } else { -1 };
            s * det(&minor)
        })
        .collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(len: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            go(i + 1, len, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, len, k, &mut Vec::new(), &mut out);
    out
}

/// Facets of `conv(S) + R_+^n` as `(primitive normal, height)`: every
/// hyperplane spanned by `k` support points and `n - k` unit directions that
/// supports the polyhedron.
fn oracle_facets(f: &Poly) -> BTreeSet<(Vec<i64>, i64)> {
    let n = f.nvars();
    let pts: Vec<Vec<i128>> =
        f.support().map(|e| e.as_slice().iter().map(|&x| x as i128).collect()).collect();
    let mut out = BTreeSet::new();
    for k in 1..=n.min(pts.len()) {
        for ps in subsets(pts.len(), k) {
            for us in subsets(n, n - k) {
                let p0 = &pts[ps[0]];
                let mut rows: Vec<Vec<i128>> =
                    ps[1..].iter().map(|&i| pts[i].iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
                for &j in &us {
                    let mut e = vec![0i128; n];
                    e[j] = 1;
                    rows.push(e);
                }
                let mut u = cross(&rows, n);
                if u.iter().all(|&x| x == 0) {
                    continue;
                }
                if u.iter().any(|&x| x < 0) {
                    if u.iter().any(|&x| x > 0) {
                        continue;
                    }
                    u.iter_mut().for_each(|x| *x = -*x);
                }
                let g = u.iter().fold(0, |g, &x| gcd(g, x));
                u.iter_mut().for_each(|x| *x /= g);
                let dot = |p: &Vec<i128>| p.iter().zip(&u).map(|(a, b)| a * b).sum::<i128>();
                let c = dot(p0);
                if pts.iter().all(|p| dot(p) >= c) {
                    out.insert((u.iter().map(|&x| x as i64).collect(), c as i64));
                }
            }
        }
    }
    out
}

fn criterion1(corpus: &[Entry]) -> Outcome {
    let t = Instant::now();
    let mut facets = 0;
    for e in corpus {
        let np = newton_polyhedron(&e.poly).map_err(|x| x.to_string())?;
        let got: BTreeSet<(Vec<i64>, i64)> =
            np.facets().iter().map(|h| (h.normal.clone(), h.height)).collect();
        let want = oracle_facets(&e.poly);
        ensure(got == want, || format!("{}: {got:?} != oracle {want:?}", e.name))?;
        facets += got.len();
    }
    let el = within(t, Duration::from_secs(10))?;
    Ok(format!("{} polynomials, {facets} facets match, {el:.2?}", corpus.len()))
}

// ---------------------------------------------------------------------------
// 2. slab equality

fn criterion2(corpus: &[Entry]) -> Outcome {
    let one = Rational::from_integer(1.into());
    let mut lattice = 0usize;
    let mut rational = 0usize;
    for (idx, e) in corpus.iter().enumerate() {
        let n = e.poly.nvars();
        let np = newton_polyhedron(&e.poly).map_err(|x| x.to_string())?;
        let hi = np.vertices().iter().flatten().copied().max().unwrap_or(0) + 1;
        for axis in 0..n {
            let d1 = build_delta1(&np, axis).map_err(|x| x.to_string())?;
            let mut b = vec![0i64; n];
            loop {
                if b[axis] <= 1 {
                    lattice += 1;
                    let (x, y) = (np.contains_lattice(&b, &one), d1.contains_lattice(&b, &one));
                    ensure(x == y, || format!("{} axis {}: lattice point {b:?}", e.name, axis + 1))?;
                }
                let mut j = n;
                let done = loop {
                    if j == 0 {
                        break true;
                    }
                    j -= 1;
                    b[j] += 1;
                    if b[j] <= hi {
                        break false;
                    }
                    b[j] = 0;
                };
                if done {
                    break;
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(7 + 100 * idx as u64 + axis as u64);
            for _ in 0..1000 {
                let pt: Vec<Rational> = (0..n)
                    .map(|j| {
                        let den: i64 = rng.gen_range(1..=12);
                        let top = if j == axis { den } else { hi * den };
                        Rational::new(rng.gen_range(0..=top).into(), den.into())
                    })
                    .collect();
                rational += 1;
                let x = np.member(&pt, &one).map_err(|x| x.to_string())?;
                let y = d1.member(&pt, &one).map_err(|x| x.to_string())?;
                ensure(x == y, || format!("{} axis {}: rational point {pt:?}", e.name, axis + 1))?;
            }
        }
    }
    Ok(format!("{lattice} lattice and {rational} rational points, 0 discrepancies"))
}

// ---------------------------------------------------------------------------
// 3. fan regularity

fn criterion3(corpus: &[Entry]) -> Outcome {
    let t = Instant::now();
    let mut cones = 0;
    for e in corpus {
        let err = |x: newtonlog_core::Error| format!("{}: {x}", e.name);
        let np = newton_polyhedron(&e.poly).map_err(err)?;
        let s0 = dual_fan(&np).map_err(err)?;
        let s = regularize(&s0).map_err(err)?;
        ensure(s.is_simplicial() && s.max_multiplicity() == Some(1), || {
            format!("{}: not unimodular", e.name)
        })?;
        ensure(s.is_regular(), || format!("{}: not regular", e.name))?;
        ensure(refines(&s, &s0).map_err(err)?, || format!("{}: does not refine the dual fan", e.name))?;
        s.check_support().map_err(|x| format!("{}: support {x}", e.name))?;
        let again = regularize(&s).map_err(err)?;
        ensure(again == s, || format!("{}: regularize not idempotent", e.name))?;
        cones += s.cones().len();
    }
    let el = within(t, Duration::from_secs(60))?;
    Ok(format!("{cones} unimodular maximal cones, refinement, support and idempotence hold, {el:.2?}"))
}

// ---------------------------------------------------------------------------
// 4. - 7. filtration and log forms

fn criterion4(corpus: &[Entry]) -> Outcome {
    let mut cases = 0;
    for e in corpus.iter().filter(|e| e.poly.axis_condition()) {
        for axis in 0..e.poly.nvars() {
            for a in 0..=3 {
                for k in 1..=3 {
                    let r = lemma1_verify(&e.poly, a, k, axis).map_err(|x| format!("{}: {x}", e.name))?;
                    ensure(r.injective, || {
                        format!(
                            "COUNTEREXAMPLE {} axis {} a {a} k {k}: rank {} < {}",
                            e.name,
                            axis + 1,
                            r.rank,
                            r.source_dim
                        )
                    })?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} (polynomial, axis, a, k) cases injective"))
}

fn criterion5(corpus: &[Entry]) -> Outcome {
    let cfg = TrialConfig { seed: 0, trials: 100, ..Default::default() };
    let mut total = 0;
    for e in corpus.iter().filter(|e| e.poly.axis_condition()) {
        let r = implication_trials(&e.poly, &cfg, IdealVariant::AllAxes).map_err(|x| x.to_string())?;
        ensure(r.premise_true >= 100 && r.within_hypothesis >= 100, || {
            format!("{}: only {} premise-true trials with k <= a", e.name, r.within_hypothesis)
        })?;
        ensure(r.conclusion_true == r.trials && r.counterexamples.is_empty(), || {
            format!("COUNTEREXAMPLE {}: {}/{} conclusions", e.name, r.conclusion_true, r.trials)
        })?;
        total += r.trials;
    }
    Ok(format!("{total} premise-true trials, conclusion holds in all"))
}

fn monomials_upto(n: usize, d: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if i == cur.len() {
            out.push(Exponent::new(cur.clone()));
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            go(i + 1, left - v, cur, out);
        }
        cur[i] = 0;
    }
    go(0, d, &mut cur, &mut out);
    out
}

fn criterion6(corpus: &[Entry]) -> Outcome {
    let mut checks = 0;
    for e in corpus {
        let f = &e.poly;
        let n = f.nvars();
        let np = newton_polyhedron(f).map_err(|x| x.to_string())?;
        let fan = regularize(&dual_fan(&np).map_err(|x| x.to_string())?).map_err(|x| x.to_string())?;
        let checker = LogFormChecker::new(f, &fan).map_err(|x| x.to_string())?;
        let facets = oracle_facets(f);
        for m in 1..=3u32 {
            let mut passing = Vec::new();
            for b in monomials_upto(n, 8) {
                let h = Poly::monic_monomial(b.as_slice().to_vec());
                let lhs = checker.is_log_form(&LogFormRep::new(h, m).unwrap()).map_err(|x| x.to_string())?;
                // b in m Delta and b >= m, straight from the oracle facets
                let rhs = b.as_slice().iter().all(|&x| x >= m)
                    && facets.iter().all(|(v, c)| b.dot(v) >= m as i64 * c);
                let lib = monomial_log_condition(f, &b.to_i64(), m).map_err(|x| x.to_string())?;
                ensure(lhs == rhs && lib == rhs, || {
                    format!("{} m {m} exponent {b:?}: {lhs} vs {rhs}", e.name)
                })?;
                if lhs {
                    passing.push(b);
                }
                checks += 1;
            }
            passing.sort();
            ensure(passing == logform_basis(&np, m, 8), || format!("{} m {m}: basis mismatch", e.name))?;
        }
    }
    Ok(format!("{checks} monomial checks, exact agreement"))
}

fn criterion7(corpus: &[Entry]) -> Outcome {
    let cfg = TrialConfig { seed: 0, trials: 50, ..Default::default() };
    let mut total = 0;
    for e in corpus.iter().filter(|e| e.poly.axis_condition()) {
        for m in [1, 2] {
            let r = normalization_trials(&e.poly, m, &cfg).map_err(|x| format!("{}: {x}", e.name))?;
            ensure(r.trials >= 50 && r.passed == r.trials, || {
                format!("{} m {m}: {}/{} round trips, failures {:?}", e.name, r.passed, r.trials, r.failures)
            })?;
            total += r.trials;
        }
    }
    Ok(format!("{total} round trips, all in F^m and the ideal, congruent mod f"))
}

// ---------------------------------------------------------------------------
// 8. nondegeneracy

fn criterion8() -> Outcome {
    let cfg = SearchConfig::default();
    ensure(cfg.primes.len() >= 3, || "fewer than three primes".into())?;
    for (text, n) in [("x1^2+x2^2+x3^2", 3), ("x1^2+x2^3+x3^5", 3), ("x1^3+x2^3+x3^3+x1*x2*x3", 3)] {
        let f = parse_poly(text, n).unwrap();
        let v = check_nondegenerate(&f, &cfg).map_err(|x| x.to_string())?;
        ensure(v.is_nondegenerate(), || format!("{text}: {:?}", v.status))?;
    }
    let f = parse_poly("(x1+x2)^2+x3^3", 3).unwrap();
    let v = check_nondegenerate(&f, &cfg).map_err(|x| x.to_string())?;
    match &v.status {
        NondegeneracyStatus::Degenerate { face, witness } => {
            ensure(face.dim == 1, || format!("witness on a face of dim {}", face.dim))?;
            let restricted = face_poly(&f, &face.vertices);
            ensure(witness.verify(&restricted).map_err(|x| x.to_string())?, || {
                "witness does not verify".into()
            })?;
            Ok(format!(
                "3 nondegenerate over {:?}; (x1+x2)^2+x3^3 degenerate, edge witness verified",
                cfg.primes
            ))
        }
        other => Err(format!("(x1+x2)^2+x3^3: {other:?}")),
    }
}

/// Terms of `f` on the segment spanned by two vertices.
fn face_poly(f: &Poly, vertices: &[Vec<i64>]) -> Poly {
    let (p, q) = (&vertices[0], &vertices[1]);
    f.filter_terms(|e| {
        let x = e.to_i64();
        let d: Vec<i64> = q.iter().zip(p).map(|(a, b)| a - b).collect();
        let y: Vec<i64> = x.iter().zip(p).map(|(a, b)| a - b).collect();
        (0..x.len()).all(|i| (0..x.len()).all(|j| y[i] * d[j] == y[j] * d[i]))
            && (0..x.len()).all(|i| y[i] * d[i] >= 0 && (y[i] * y[i]) <= d[i] * d[i])
    })
}

// ---------------------------------------------------------------------------
// 9. rounding

fn criterion9() -> Outcome {
    let t = Instant::now();
    let s = rounding_exhaustive();
    ensure(s.violations.is_empty(), || {
        format!("{} violations, first {:?}", s.violations.len(), s.violations.first())
    })?;
    let el = within(t, Duration::from_secs(5))?;
    Ok(format!("{} cases ({} premise-true), 0 violations, {el:.2?}", s.cases, s.premise_true))
}

// ---------------------------------------------------------------------------
// 10. - 11. binary

fn run(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_newtonlog")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion10() -> Outcome {
    let (code, out) = run(&["extend", "--family", "x1^2+x2^2+x3^2+x4", "--h", "x1*x2*x3", "--m", "1"]);
    ensure(code == 0, || format!("A1 family exit {code}"))?;
    let v: serde_json::Value = serde_json::from_slice(&out).map_err(|x| x.to_string())?;
    let rays = v["result"]["report"]["rays"].as_array().ok_or("no ray table")?;
    ensure(rays.iter().all(|r| r["pass"] == true), || "A1 family: a ray fails".into())?;
    ensure(rays.iter().any(|r| r["ray"] == serde_json::json!([1, 1, 1, 2])), || {
        "ray (1,1,1,2) missing".into()
    })?;
    let (code, _) = run(&["extend", "--family", "x1^2+x2^3+x3^5+x4*x1*x2*x3", "--h", "x1*x2*x3", "--m", "1"]);
    ensure(code == 0, || format!("Brieskorn family exit {code}"))?;
    let (code, _) = run(&["extend", "--family", "x1^2+x2^2+x3^2+x4", "--h", "1", "--m", "1"]);
    ensure(code == 1, || format!("H = 1 exit {code}, expected 1"))?;
    Ok(format!(
        "A1 family passes {} rays incl. (1,1,1,2); Brieskorn family passes; H = 1 exits 1",
        rays.len()
    ))
}

fn criterion11(dir: &Path) -> Outcome {
    let fan = dir.join("fan.json");
    std::fs::write(&fan, r#"{"dim": 2, "rays": [[1, 2], [2, 1]], "cones": [[0, 1]]}"#).unwrap();
    let corpus_file = dir.join("corpus.txt");
    std::fs::write(&corpus_file, "# corpus\nx1^2+x2^2+x3^2\nx1^3+x1*x2+x2^3\n").unwrap();
    let fan = fan.to_str().unwrap();
    let corpus_file = corpus_file.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["newton", "--poly", "x1^3+x1*x2+x2^3", "--delta1-axis", "1"],
        vec!["resolve", "--poly", "x1^2+x2^3+x3^5"],
        vec!["resolve", "--fan", fan],
        vec!["check", "--poly", "(x1+x2)^2+x3^3", "--seed", "5", "--trials", "20", "--norm-trials", "10"],
        vec![
            "check",
            "--corpus",
            corpus_file,
            "--seed",
            "3",
            "--trials",
            "10",
            "--norm-trials",
            "5",
            "--m",
            "2",
        ],
        vec!["extend", "--family", "x1^2+x2^2+x3^2+x4", "--h", "x1*x2*x3"],
    ];
    for args in &commands {
        for fmt in ["json", "text"] {
            let mut a = args.clone();
            a.extend(["--format", fmt]);
            let (c1, o1) = run(&a);
            let (c2, o2) = run(&a);
            ensure(c1 == c2 && o1 == o2 && !o1.is_empty(), || format!("{a:?} differs between runs"))?;
        }
    }
    Ok(format!("{} commands x 2 formats byte-identical across reruns", commands.len()))
}

fn main() {
    let corpus = corpus();
    let dir = tempfile::tempdir().expect("temp dir");
    let criteria: Vec<Criterion> = vec![
        ("polyhedral oracle equivalence", Box::new(|| criterion1(&corpus))),
        ("slab equality", Box::new(|| criterion2(&corpus))),
        ("fan regularity", Box::new(|| criterion3(&corpus))),
        ("injectivity sweep", Box::new(|| criterion4(&corpus))),
        ("all-axes implication trials", Box::new(|| criterion5(&corpus))),
        ("log-form monomial equivalence", Box::new(|| criterion6(&corpus))),
        ("normalization round trip", Box::new(|| criterion7(&corpus))),
        ("nondegeneracy verdicts", Box::new(criterion8)),
        ("rounding exhaustion", Box::new(criterion9)),
        ("deformation check", Box::new(criterion10)),
        ("determinism", Box::new(|| criterion11(dir.path()))),
    ];
    println!(
        "acceptance corpus: {}",
        corpus.iter().map(|e| format!("{} = {}", e.name, e.text())).collect::<Vec<_>>().join("; ")
    );
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let el = t.elapsed();
        match r {
            Ok(msg) => println!("criterion {:>2} {name}: PASS ({msg}) [{el:.2?}]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({msg}) [{el:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
