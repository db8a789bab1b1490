//! Kouchnirenko nondegeneracy: for every compact face of the Newton
//! polyhedron, the log-derivatives `x_i df/dx_i` of the face truncation have
//! no common zero on the torus.

mod search;
mod upoly;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactpoly::{Poly, Rational};
use crate::polyhedral::{newton_polyhedron, CompactFace};

pub use search::{torus_critical_search, SearchMode, SearchOutcome};

pub const DEFAULT_PRIMES: [u64; 3] = [101, 103, 211];
pub const DEFAULT_MAX_EVALUATIONS: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub primes: Vec<u64>,
    /// Torus points evaluated per face and prime before giving up.
    pub max_evaluations: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { primes: DEFAULT_PRIMES.to_vec(), max_evaluations: DEFAULT_MAX_EVALUATIONS }
    }
}

/// A common torus zero of the log-derivatives of a face polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Rational {
        #[serde(serialize_with = "rationals")]
        point: Vec<Rational>,
    },
    FiniteField {
        prime: u64,
        point: Vec<u64>,
    },
    /// `g = x^base * q(x^direction)`; every nonzero complex root `u` of
    /// `factor` gives critical points `x` with `x^direction = u`.
    Algebraic {
        base: Vec<i64>,
        direction: Vec<i64>,
        #[serde(serialize_with = "rationals")]
        factor: Vec<Rational>,
    },
}

fn rationals<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|q| q.to_string()))
}

fn one_based<S: Serializer>(v: &[usize], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|i| i + 1))
}

impl Witness {
    /// Substitutes the witness into every log-derivative of `g`.
    pub fn verify(&self, g: &Poly) -> Result<bool> {
        let n = g.nvars();
        match self {
            Witness::Rational { point } => {
                if point.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, got: point.len() });
                }
                if point.iter().any(num_traits::Zero::is_zero) {
                    return Ok(false);
                }
                for i in 0..n {
                    if !num_traits::Zero::is_zero(&g.log_derivative(i).eval(point)?) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Witness::FiniteField { prime, point } => {
                if point.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, got: point.len() });
                }
                if point.iter().any(|&x| x % prime == 0) {
                    return Ok(false);
                }
                for i in 0..n {
                    if g.log_derivative(i).mod_p(*prime)?.eval(point) != 0 {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Witness::Algebraic { base, direction, factor } => {
                search::verify_algebraic(g, base, direction, factor)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceOutcome {
    Witness,
    NoWitness,
    OverBudget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceReport {
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
    pub mode: &'static str,
    /// Primes whose scan ran to completion.
    pub primes: Vec<u64>,
    /// Primes skipped for bad reduction or budget.
    pub skipped_primes: Vec<u64>,
    #[serde(serialize_with = "one_based")]
    pub free_vars: Vec<usize>,
    pub outcome: FaceOutcome,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum NondegeneracyStatus {
    Nondegenerate { exact: bool, confidence: String },
    Degenerate { face: CompactFace, witness: Witness },
    Unknown { faces: Vec<CompactFace> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NondegeneracyVerdict {
    pub status: NondegeneracyStatus,
    pub faces: Vec<FaceReport>,
}

impl NondegeneracyVerdict {
    pub fn is_nondegenerate(&self) -> bool {
        matches!(self.status, NondegeneracyStatus::Nondegenerate { .. })
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self.status, NondegeneracyStatus::Degenerate { .. })
    }
}

/// Runs the torus search on every compact face of the Newton polyhedron.
/// Faces of dimension at most one are decided exactly.
pub fn check_nondegenerate(f: &Poly, cfg: &SearchConfig) -> Result<NondegeneracyVerdict> {
    let np = newton_polyhedron(f)?;
    let faces = np.compact_face_lattice();
    let mut reports = Vec::with_capacity(faces.len());
    let mut degenerate = None;
    let mut unknown = Vec::new();
    let mut all_exact = true;
    for face in &faces {
        let g = face.truncate(&np, f);
        let mode = if face.dim <= 1 {
            SearchMode::ExactLowDim
        } else {
            all_exact = false;
            SearchMode::FiniteField { primes: cfg.primes.clone(), max_evaluations: cfg.max_evaluations }
        };
        let out = torus_critical_search(&g, &mode)?;
        if let Some(w) = &out.witness {
            if !w.verify(&g)? {
                return Err(Error::Counterexample(format!(
                    "torus witness {w:?} failed re-substitution on face {:?}",
                    face.vertices
                )));
            }
        }
        let outcome = if out.witness.is_some() {
            FaceOutcome::Witness
        } else if out.decided() {
            FaceOutcome::NoWitness
        } else {
            FaceOutcome::OverBudget
        };
        match outcome {
            FaceOutcome::Witness if degenerate.is_none() => {
                degenerate = Some((face.clone(), out.witness.clone().unwrap()));
            }
            FaceOutcome::OverBudget => unknown.push(face.clone()),
            _ => {}
        }
        reports.push(FaceReport {
            dim: face.dim,
            vertices: face.vertices.clone(),
            mode: mode.name(),
            primes: out.primes_scanned,
            skipped_primes: out.primes_skipped,
            free_vars: out.free_vars,
            outcome,
            witness: out.witness,
        });
    }
    let status = if let Some((face, witness)) = degenerate {
        NondegeneracyStatus::Degenerate { face, witness }
    } else if !unknown.is_empty() {
        NondegeneracyStatus::Unknown { faces: unknown }
    } else if all_exact {
        NondegeneracyStatus::Nondegenerate {
            exact: true,
            confidence: "every compact face decided exactly".into(),
        }
    } else {
        let primes: Vec<String> = cfg.primes.iter().map(u64::to_string).collect();
        NondegeneracyStatus::Nondegenerate {
            exact: false,
            confidence: format!(
                "no witness over F_p for p in {{{}}}; faces of dimension <= 1 decided exactly",
                primes.join(", ")
            ),
        }
    };
    Ok(NondegeneracyVerdict { status, faces: reports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    fn p(s: &str, n: usize) -> Poly {
        parse_poly(s, n).unwrap()
    }

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    #[test]
    fn a1_and_brieskorn_nondegenerate() {
        let cfg = SearchConfig::default();
        for s in ["x1^2+x2^2+x3^2", "x1^2+x2^3+x3^5"] {
            let v = check_nondegenerate(&p(s, 3), &cfg).unwrap();
            assert!(v.is_nondegenerate(), "{s}: {:?}", v.status);
            let facet = v.faces.iter().find(|r| r.dim == 2).unwrap();
            assert_eq!(facet.primes, DEFAULT_PRIMES.to_vec());
        }
    }

    #[test]
    fn degenerate_square_edge() {
        let f = p("(x1+x2)^2+x3^3", 3);
        let v = check_nondegenerate(&f, &SearchConfig::default()).unwrap();
        let NondegeneracyStatus::Degenerate { face, witness } = &v.status else {
            panic!("{:?}", v.status);
        };
        assert_eq!(face.vertices, vec![vec![0, 2, 0], vec![2, 0, 0]]);
        assert_eq!(*witness, Witness::Rational { point: q(&[1, -1, 1]) });
        let rep = v.faces.iter().find(|r| r.outcome == FaceOutcome::Witness).unwrap();
        assert_eq!(rep.free_vars, vec![2]);
        let np = newton_polyhedron(&f).unwrap();
        assert!(witness.verify(&face.truncate(&np, &f)).unwrap());
    }

    #[test]
    fn hesse_generic_nondegenerate() {
        let f = p("x1^3+x2^3+x3^3+x1*x2*x3", 3);
        assert!(check_nondegenerate(&f, &SearchConfig::default()).unwrap().is_nondegenerate());
        // c^3 = -27 is the degenerate member of the family
        let g = p("x1^3+x2^3+x3^3-3*x1*x2*x3", 3);
        let v = check_nondegenerate(&g, &SearchConfig::default()).unwrap();
        assert!(v.is_degenerate());
    }

    #[test]
    fn irrational_repeated_root() {
        // (x1^2+x2^2)^2 + x3^5: edge has a double root at x2/x1 = +-i
        let f = p("(x1^2+x2^2)^2+x3^5", 3);
        let v = check_nondegenerate(&f, &SearchConfig::default()).unwrap();
        let NondegeneracyStatus::Degenerate { witness, .. } = &v.status else {
            panic!("{:?}", v.status);
        };
        assert!(matches!(witness, Witness::Algebraic { .. }));
    }

    #[test]
    fn unknown_on_budget() {
        let cfg = SearchConfig { primes: vec![101], max_evaluations: 10 };
        let v = check_nondegenerate(&p("x1^3+x2^3+x3^3+x1*x2*x3", 3), &cfg).unwrap();
        assert!(matches!(v.status, NondegeneracyStatus::Unknown { .. }));
    }

    #[test]
    fn zero_and_json() {
        assert_eq!(check_nondegenerate(&Poly::zero(2), &SearchConfig::default()), Err(Error::ZeroPolynomial));
        let v = check_nondegenerate(&p("x1^2+x2^3", 2), &SearchConfig::default()).unwrap();
        let j = serde_json::to_string(&v).unwrap();
        assert!(j.starts_with(r#"{"status":{"verdict":"nondegenerate","exact":true"#), "{j}");
    }

    #[test]
    fn witness_rejects_bad_points() {
        let g = p("x1^2+2*x1*x2+x2^2", 2);
        assert!(!Witness::Rational { point: q(&[1, 1]) }.verify(&g).unwrap());
        assert!(!Witness::Rational { point: q(&[0, 0]) }.verify(&g).unwrap());
        assert!(Witness::FiniteField { prime: 101, point: vec![3, 98] }.verify(&g).unwrap());
        assert!(!Witness::FiniteField { prime: 101, point: vec![3, 97] }.verify(&g).unwrap());
    }
}
