use crate::algebra::parse::ParseError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("ring mismatch")]
    RingMismatch,
    #[error("arity mismatch: expected {expected} coordinates, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("{0} requires exact coefficients")]
    FloatingCoefficients(&'static str),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("prime ideal is the unit ideal")]
    UnitIdeal,
    #[error("input not primary to P")]
    NotPrimary,
    #[error("Q not primary to P")]
    ColengthInfinite,
    #[error(
        "no subset of the coordinate variables is independent modulo P with the expected size; apply a linear change of coordinates"
    )]
    NoCoordinateSplit,
    #[error("division by zero")]
    DivisionByZero,
    #[error("point not on variety")]
    PointNotOnVariety,
    #[error("point may not be isolated")]
    NotIsolated,
    #[error("eliminating dual not finite at this truncation")]
    EliminatingDualInfinite,
    #[error("degree {degree} beyond truncation degree {truncation}")]
    BeyondTruncation { degree: u32, truncation: u32 },
    #[error("right action implemented for constant coefficients only")]
    NonConstantRightAction,
    #[error("degree cap {cap} reached: {what}")]
    CapReached { cap: u32, what: String },
    #[error("coefficient not rational of low degree")]
    Interpolation,
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
