use thiserror::Error;

use crate::alcove::Weight;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible conductor: {from} does not divide {to}")]
    IncompatibleConductor { from: u32, to: u32 },
    #[error("invalid conductor {0}")]
    InvalidConductor(u32),
    #[error("expected {expected} coefficients, found {found}")]
    CoefficientCount { expected: usize, found: usize },
    #[error("invalid level {0}")]
    InvalidLevel(u32),
    #[error("weight outside alcove: {weight} at level {level}")]
    WeightOutsideAlcove { weight: Weight, level: u32 },
    #[error("{weight} is not a corner weight at level {level}")]
    NotACorner { weight: Weight, level: u32 },
    #[error("fusion coefficient overflow")]
    CoefficientOverflow,
    #[error("degenerate S-matrix")]
    DegenerateSMatrix,
    #[error("degenerate Gauss sum")]
    DegenerateGaussSum,
    #[error("no Type-D algebra at this level (k = {0} is not divisible by 3)")]
    NoTypeDAlgebra(u32),
    #[error("stationary fusion is only resolved at levels 3 and 6, not {0}")]
    ResolutionUnavailable(u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("inadmissible m = {m} for family {family}: {reason}")]
    Inadmissible { family: u8, m: i64, reason: String },
    #[error("unresolvable ledger label {0:?}")]
    UnresolvableLabel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
