//! Benchmark fixtures shared by the criterion benches.

use newtonlog_core::{parse_poly, Poly};

/// Named polynomials used across benches, with their variable counts.
pub const FIXTURES: &[(&str, &str, usize)] = &[
    ("a1_surface", "x1^2+x2^2+x3^2", 3),
    ("brieskorn_235", "x1^2+x2^3+x3^5", 3),
    ("cusp_curve", "x1^3+x1*x2+x2^3", 2),
    ("hesse_cubic", "x1^3+x2^3+x3^3+x1*x2*x3", 3),
    ("quartic_4var", "x1^4+x2^3+x3^3+x4^2+x1*x2*x3", 4),
];

pub fn fixture(name: &str) -> Poly {
    let (_, text, n) =
        FIXTURES.iter().find(|(k, _, _)| *k == name).unwrap_or_else(|| panic!("unknown fixture {name}"));
    parse_poly(text, *n).expect("fixture parses")
}
