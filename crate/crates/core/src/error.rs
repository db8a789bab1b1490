use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("variable x{index} out of range (nvars = {nvars})")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("variable count mismatch: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("denominator of coefficient {coeff} is divisible by {prime}")]
    DenominatorDivisible { coeff: String, prime: u64 },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial has a nonzero constant term; its Newton polyhedron has no compact facet")]
    NoCompactFacet,
    #[error("empty generator set")]
    EmptyGenerators,
    #[error("generators do not span a full-dimensional cone (rank {rank} < {dim})")]
    NotFullDimensional { rank: usize, dim: usize },
    #[error("vector {0:?} has a negative entry")]
    NegativeEntry(Vec<i64>),
    #[error("no compact facet meets the coordinate hyperplane of axis {axis}")]
    NoFacetMeetsAxis { axis: usize },
    #[error("enumeration unbounded in coordinate {coord}")]
    Unbounded { coord: usize },
    #[error("enumeration box of {size} points exceeds the cap {cap}")]
    EnumerationOverflow { size: u128, cap: u128 },
    #[error("rays are linearly dependent")]
    DependentRays,
    #[error("invalid ray {0:?}: must be nonzero, nonnegative and primitive")]
    InvalidRay(Vec<i64>),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("fans have different supports: {0}")]
    SupportMismatch(String),
    #[error("subdivision cap of {0} steps exceeded")]
    IterationCap(usize),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("counterexample: {0}")]
    Counterexample(String),
    #[error("non-toric deformation, out of scope: {0}")]
    NonToric(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
