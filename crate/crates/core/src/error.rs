use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabels(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("rank {rank} exceeds ground set size {n}")]
    BadRank { rank: usize, n: usize },
    #[error("selected columns do not form a basis of the column space: {0}")]
    SingularBasis(String),
    #[error("over budget: {0}")]
    Overbudget(String),
    #[error("ground set of size {0} exceeds the 64-element limit")]
    TooLarge(usize),
    #[error("element `{0}` lies in the basis")]
    NotCobasisElement(String),
    #[error("element `{0}` is not in the basis")]
    NotBasisElement(String),
    #[error("set is not a basis: {0}")]
    NotABasis(String),
    #[error("bad overlap between parallel-connection operands: {0}")]
    BadOverlap(String),
    #[error("matroid is not regular: {0}")]
    NotRegular(String),
    #[error("expected a set of size {expected}, got {actual}")]
    BadSize { expected: usize, actual: usize },
    #[error("element `{0}` is a loop or coloop")]
    DegenerateElement(String),
    #[error("linear form for basis variable x{0} has a vanishing diagonal coefficient")]
    UnsolvableTheta(usize),
    #[error("quotient ring is not finite-dimensional: {0}")]
    NotArtinian(String),
    #[error("lower order ideal is infinite: variable x{0} has no pure power in the upper ideal")]
    InfiniteLowerIdeal(usize),
    #[error("{{e_n, e_(n-r)}} = {{{0}, {1}}} is not a cocircuit")]
    NoCocircuitPair(String, String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("unknown fixture `{0}`")]
    UnknownName(String),
    #[error("ordering is not standard: {0}")]
    NotStandard(String),
    #[error("not a prime: {0}")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("basis tests disagree: {0}")]
    PathDisagreement(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
