use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("exp requires a zero constant term")]
    NonzeroConstant,
    #[error("log requires constant term 1")]
    ConstantNotOne,
    #[error("series inverse requires a rational unit constant term")]
    NonUnitConstant,
    #[error("a truncated series needs at least one coefficient")]
    EmptySeries,
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("invalid dimension {n}: {reason}")]
    InvalidDimension { n: usize, reason: String },
    #[error("branch {branch} is not available in dimension {n}: {reason}")]
    InvalidBranch {
        branch: String,
        n: usize,
        reason: String,
    },
    #[error("Hodge diamond violates {rule} at (p,q) = ({p},{q})")]
    HodgeSymmetry {
        rule: &'static str,
        p: usize,
        q: usize,
    },
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("zero polynomial has no well-defined root set")]
    ZeroPolynomial,
    #[error("polynomial is not univariate (uses {0} variables)")]
    NotUnivariate(usize),
    #[error("root search bound too large to certify: {0}")]
    RootBoundTooLarge(String),
    #[error("empty bounds for variable {0}")]
    EmptyBounds(String),
    #[error("search configuration error: {0}")]
    Config(String),
    #[error("certificate rejected: {0}")]
    CertificateRejected(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
}
