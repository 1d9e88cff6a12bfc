use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("chain ring length must be at least 1, got {0}")]
    BadLength(u32),
    #[error("chain ring of size {p}^{len} exceeds the supported range")]
    RingTooLarge { p: u32, len: u32 },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("matrix is not in GL_n(R((t))): residue determinant vanishes")]
    NotInGroup,
    #[error("insufficient window: {0}")]
    InsufficientWindow(String),
    #[error("{what}: {size} exceeds guard {limit}")]
    TooLarge { what: &'static str, size: u128, limit: u128 },
    #[error("module is not a direct summand")]
    NotASummand,
    #[error("wrong mode: {0}")]
    WrongMode(String),
    #[error("distribution is not K-invariant")]
    NotBiInvariant,
    #[error("orbit decomposition does not cover the support")]
    SupportNotCovered,
    #[error("truncation level {got} below required {needed}")]
    InsufficientTruncation { needed: usize, got: usize },
    #[error("point set is not stable under K")]
    NotKStable,
    #[error("coordinate change has non-unit linear coefficient")]
    NotAnAutomorphism,
    #[error("ladder tail not certified: {0}")]
    LadderNotGeometric(String),
    #[error("characteristic {p} does not exceed bound {bound}")]
    CharTooSmall { p: u32, bound: u32 },
    #[error("sl2 decomposition failure: {0}")]
    DecompositionFailure(String),
    #[error("invalid Cartan type {0}")]
    InvalidType(String),
    #[error("structure constant audit failed: {0}")]
    Audit(String),
    #[error("series precision insufficient for valuation")]
    InsufficientSeriesPrecision,
    #[error("failed hypotheses: {}", .0.join("; "))]
    FailedHypothesis(Vec<String>),
    #[error("search exhausted after {0} attempts")]
    SearchExhausted(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
