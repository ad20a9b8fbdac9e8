//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("index out of range: {0}")]
    IndexRange(String),
    #[error("invalid weight: {0}")]
    Weight(String),
    #[error("invalid flow: {0}")]
    Flow(String),
    #[error("operator not well-defined: {0}")]
    NotWellDefined(String),
    #[error("invalid tableau: {0}")]
    Tableau(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("zero input: {0}")]
    ZeroInput(&'static str),
    #[error("mixed-weight element where a weight-homogeneous element is required")]
    MixedWeight,
    #[error("vector is not in the span of the standard basis")]
    NotInSpan,
    #[error("witness replay failed: {0}")]
    WitnessReplay(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
