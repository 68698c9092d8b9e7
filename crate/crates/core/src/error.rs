use thiserror::Error;

/// Errors produced by spectrum generation, inequality checks and the solver.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("insufficient spectrum: need {needed} eigenvalues, have {available}")]
    InsufficientSpectrum { needed: usize, available: usize },

    #[error("insufficient input levels: {0}")]
    InsufficientInputLevels(String),

    #[error("negative discriminant {0:e}: prefix does not satisfy the inequality")]
    NegativeDiscriminant(f64),

    #[error("nonpositive entry {value} at position {index}")]
    NonpositiveEntry { index: usize, value: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid shift: min|X|^2 = {min_x2} must be below 2n = {two_n}")]
    InvalidShift { min_x2: f64, two_n: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("zero vector")]
    ZeroVector,

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
