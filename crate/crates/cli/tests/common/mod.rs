//! Test corpus shared by the cli integration tests.
#![allow(dead_code)]

use newtonlog_core::{parse_poly, Exponent, Poly, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const NAMED: &[(&str, &str, usize)] = &[
    ("a1", "x1^2+x2^2+x3^2", 3),
    ("brieskorn", "x1^2+x2^3+x3^5", 3),
    ("cusp", "x1^3+x1*x2+x2^3", 2),
    ("square_edge", "(x1+x2)^2+x3^3", 3),
    ("hesse", "x1^3+x2^3+x3^3+x1*x2*x3", 3),
];

pub struct Entry {
    pub name: String,
    pub poly: Poly,
}

impl Entry {
    pub fn text(&self) -> String {
        self.poly.to_string()
    }
}

/// Pure powers `x_i^{d_i}` with `d_i` in `2..=4` plus one to three mixed
/// monomials with exponents in `0..=2`, so the axis condition holds.
pub fn random_axis_poly(n: usize, seed: u64) -> Poly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms: Vec<(Exponent, Rational)> = Vec::new();
    for i in 0..n {
        let d: u32 = rng.gen_range(2..=4);
        let mut e = vec![0u32; n];
        e[i] = d;
        terms.push((Exponent::new(e), coeff(&mut rng)));
    }
    let mixed = rng.gen_range(1..=3);
    for _ in 0..mixed {
        let e: Vec<u32> = loop {
            let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
            if e.iter().filter(|&&x| x > 0).count() >= 2 {
                break e;
            }
        };
        terms.push((Exponent::new(e), coeff(&mut rng)));
    }
    Poly::from_terms(n, terms).expect("valid terms")
}

fn coeff(rng: &mut ChaCha8Rng) -> Rational {
    let c: i64 = rng.gen_range(1..=3);
    let c = if rng.gen_bool(0.5) { -c } else { c };
    Rational::from_integer(c.into())
}

pub fn named() -> Vec<Entry> {
    NAMED
        .iter()
        .map(|(name, text, n)| Entry { name: (*name).into(), poly: parse_poly(text, *n).unwrap() })
        .collect()
}

/// Named polynomials plus two seeded random ones for each n in {2, 3, 4}.
pub fn corpus() -> Vec<Entry> {
    let mut out = named();
    for n in 2..=4usize {
        for j in 0..2u64 {
            let seed = 1000 + 10 * n as u64 + j;
            let poly = random_axis_poly(n, seed);
            assert!(poly.axis_condition());
            out.push(Entry { name: format!("random_n{n}_{j}"), poly });
        }
    }
    out
}
