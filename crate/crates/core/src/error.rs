use thiserror::Error;

/// Every failure the library can report.
///
/// Variants fall into three families, see [`ErrorClass`]: malformed input,
/// domain errors (the input is well formed but the operation is undefined on
/// it) and precision exhaustion of an interval computation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("zero denominator")]
    ZeroDenominator,
    #[error("negative radicand")]
    NegativeRadicand,
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("expansion has {available} digits, {requested} requested")]
    NotEnoughDigits { available: usize, requested: usize },
    #[error("Möbius map has a pole at the input")]
    PoleAtInput,
    #[error("matrix is not factorable: {0}")]
    NotFactorable(String),
    #[error(
        "parity padding unreachable: a determinant -1 matrix always has an odd number of factors"
    )]
    ParityUnreachable,

    #[error("degenerate Jacobi-Perron step: first fractional part is zero")]
    DegenerateStep,
    #[error("expansion has {available} steps, {requested} requested")]
    NotEnoughSteps { available: usize, requested: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("leading entry of the convergent column is zero")]
    ZeroLeadingEntry,

    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),
    #[error("elliptic element has no boundary fixed point")]
    EllipticInput,
    #[error("identity fixes every point")]
    IdentityInput,
    #[error("element is not hyperbolic")]
    NotHyperbolic,

    #[error("leading period lambda_1 is zero")]
    ZeroLeading,
    #[error("order unit has non-positive image")]
    NonPositiveUnit,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("chain digit is negative; simplicial chains need non-negative data")]
    NegativeDigit,
}

/// Coarse classification used for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Malformed,
    Domain,
    Precision,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse(_) => ErrorClass::Malformed,
            Error::PrecisionExhausted(_) => ErrorClass::Precision,
            _ => ErrorClass::Domain,
        }
    }

    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "Parse",
            Error::ZeroDenominator => "ZeroDenominator",
            Error::NegativeRadicand => "NegativeRadicand",
            Error::DivisionByZero => "DivisionByZero",
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::NotEnoughDigits { .. } => "NotEnoughDigits",
            Error::PoleAtInput => "PoleAtInput",
            Error::NotFactorable(_) => "NotFactorable",
            Error::ParityUnreachable => "ParityUnreachable",
            Error::DegenerateStep => "DegenerateStep",
            Error::NotEnoughSteps { .. } => "NotEnoughSteps",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::ZeroLeadingEntry => "ZeroLeadingEntry",
            Error::NotUnimodular(_) => "NotUnimodular",
            Error::EllipticInput => "EllipticInput",
            Error::IdentityInput => "IdentityInput",
            Error::NotHyperbolic => "NotHyperbolic",
            Error::ZeroLeading => "ZeroLeading",
            Error::NonPositiveUnit => "NonPositiveUnit",
            Error::RankMismatch(..) => "RankMismatch",
            Error::OutOfRange(_) => "OutOfRange",
            Error::NegativeDigit => "NegativeDigit",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
