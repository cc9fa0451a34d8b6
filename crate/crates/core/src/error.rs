//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// `Resource` is the only "soft" failure: it signals that a configured
/// budget (minor cap, S-pair budget) was exhausted, not that the input was
/// invalid.  Callers that map errors to process exit codes should treat it
/// separately from parse/usage errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: operands belong to different polynomial rings")]
    RingMismatch,
    #[error("evaluation point has {got} coordinates, ring has {want} variables")]
    PointLength { want: usize, got: usize },
    #[error("cannot normalize the zero polynomial")]
    ZeroNormalize,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    #[error("homogenization is only defined for rank-one quotients (n = 1), got n = {0}")]
    HomogenizeRank(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
