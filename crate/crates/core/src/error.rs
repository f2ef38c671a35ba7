use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Every failure the library can report.
///
/// Variant names are part of the CLI contract: [`Error::name`] is emitted in
/// machine-readable error reports.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("limit at t = 0 does not exist: denominator vanishes after reduction")]
    PoleAtZero,
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("moment order exceeded: need {needed}, functional has order {available}")]
    OrderExceeded { needed: usize, available: usize },
    #[error("basis is not a simple set: entry {0} has the wrong degree")]
    NotSimpleSet(usize),
    #[error("missing recurrence coefficient {0}")]
    MissingCoefficient(String),
    #[error("regularity violated: {condition} at n = {index}")]
    RegularityViolation { condition: String, index: usize },
    #[error("vanishing denominator: {condition} at n = {index}")]
    DenominatorZero { condition: String, index: usize },
    #[error("restriction violated: {0}")]
    RestrictionViolation(String),
    #[error("identity failed at n = {n}, power {power}")]
    IdentityFailed { n: usize, power: usize },
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("degenerate system: {0}")]
    DegenerateSystem(String),
    #[error("degree claim violated: {0}")]
    DegreeClaimViolated(String),
    #[error("discriminant is not a rational square: {0}")]
    NonRationalRoot(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
}

impl Error {
    /// Variant name, stable across releases.
    pub fn name(&self) -> &'static str {
        match self {
            Error::PoleAtZero => "PoleAtZero",
            Error::DomainError(_) => "DomainError",
            Error::InvalidParams(_) => "InvalidParams",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::OrderExceeded { .. } => "OrderExceeded",
            Error::NotSimpleSet(_) => "NotSimpleSet",
            Error::MissingCoefficient(_) => "MissingCoefficient",
            Error::RegularityViolation { .. } => "RegularityViolation",
            Error::DenominatorZero { .. } => "DenominatorZero",
            Error::RestrictionViolation(_) => "RestrictionViolation",
            Error::IdentityFailed { .. } => "IdentityFailed",
            Error::MissingData(_) => "MissingData",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::DegenerateSystem(_) => "DegenerateSystem",
            Error::DegreeClaimViolated(_) => "DegreeClaimViolated",
            Error::NonRationalRoot(_) => "NonRationalRoot",
            Error::DegenerateInput(_) => "DegenerateInput",
        }
    }
}
