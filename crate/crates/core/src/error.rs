use thiserror::Error;

/// Errors raised by the library. Every variant maps to one of the failure
/// modes of the operations in this crate; the CLI turns them into exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("side cardinality mismatch: left has {left} entries, right has {right}")]
    SideCardinalityMismatch { left: usize, right: usize },

    #[error("Frolov scale factor must be nonzero")]
    ZeroScale,

    #[error("degenerate solution: {0}")]
    DegenerateSolution(String),

    #[error("side sums differ, solution cannot be reduced")]
    UnequalSideSums,

    #[error("arithmetic progression needs a positive count, got {0}")]
    NonPositiveCount(i64),

    #[error("closed-form power sums exist only for exponents 1..=4, got {0}")]
    UnsupportedExponent(u32),

    #[error("blocks expand to {left} terms on the left but {right} on the right")]
    CardinalityMismatch { left: usize, right: usize },

    #[error("degenerate parameters for {family}: {reason}")]
    DegenerateParameters { family: String, reason: String },

    #[error("a denominator of the construction vanishes: {0}")]
    DenominatorVanishes(String),

    #[error("terms X{x} and Y{y} cannot be made equal by any choice of d")]
    NoCancellation { x: usize, y: usize },

    #[error("cancellation index out of range: X{x}, Y{y} (expected 1..=6)")]
    BadCancellationPair { x: usize, y: usize },

    #[error("not an ideal solution: {size} terms per side at degree {degree}")]
    NotIdeal { size: usize, degree: u32 },

    #[error("input claims degree {claimed} but only verifies to degree {actual}")]
    NotASolution { claimed: u32, actual: u32 },

    #[error("point is not on the curve")]
    NotOnCurve,

    #[error("exceptional point of the birational map: {0}")]
    ExceptionalPoint(String),

    #[error("value is not the square of a rational number: {0}")]
    NotASquare(String),

    #[error("Fermat ascent is stuck at t = {0}")]
    AscentStuck(String),

    #[error("search bound {bound} exceeds the safety limit {limit}")]
    BoundTooLarge { bound: u64, limit: u64 },

    #[error("polynomial degree {degree} exceeds the cap {cap}")]
    ExponentOverflow { degree: u32, cap: u32 },

    #[error("identity fails at exponent {r}: difference is {difference}")]
    IdentityFails { r: u32, difference: String },

    #[error("unknown family id {0:?}")]
    UnknownFamily(String),

    #[error("missing parameter {0:?}")]
    MissingParameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Variant name, used as a stable tag in CLI diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SideCardinalityMismatch { .. } => "SideCardinalityMismatch",
            Error::ZeroScale => "ZeroScale",
            Error::DegenerateSolution { .. } => "DegenerateSolution",
            Error::UnequalSideSums => "UnequalSideSums",
            Error::NonPositiveCount { .. } => "NonPositiveCount",
            Error::UnsupportedExponent { .. } => "UnsupportedExponent",
            Error::CardinalityMismatch { .. } => "CardinalityMismatch",
            Error::DegenerateParameters { .. } => "DegenerateParameters",
            Error::DenominatorVanishes { .. } => "DenominatorVanishes",
            Error::NoCancellation { .. } => "NoCancellation",
            Error::BadCancellationPair { .. } => "BadCancellationPair",
            Error::NotIdeal { .. } => "NotIdeal",
            Error::NotASolution { .. } => "NotASolution",
            Error::NotOnCurve => "NotOnCurve",
            Error::ExceptionalPoint { .. } => "ExceptionalPoint",
            Error::NotASquare { .. } => "NotASquare",
            Error::AscentStuck { .. } => "AscentStuck",
            Error::BoundTooLarge { .. } => "BoundTooLarge",
            Error::ExponentOverflow { .. } => "ExponentOverflow",
            Error::IdentityFails { .. } => "IdentityFails",
            Error::UnknownFamily { .. } => "UnknownFamily",
            Error::MissingParameter { .. } => "MissingParameter",
            Error::Parse { .. } => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
