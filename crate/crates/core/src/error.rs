use thiserror::Error;

use crate::characterize::RecoveryFailure;
use crate::transform::Side;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("index {index} out of bounds for group of size {size}")]
    IndexOutOfBounds { index: usize, size: usize },

    #[error("group mismatch: orders {left:?} vs {right:?}")]
    GroupMismatch { left: Vec<usize>, right: Vec<usize> },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("side mismatch: expected {expected} function, found {found}")]
    SideMismatch { expected: Side, found: Side },

    #[error("group of size {size} exceeds the limit of {limit}")]
    GroupTooLarge { size: usize, limit: usize },

    #[error("automorphism sampling gave up after {attempts} attempts")]
    SamplingExhausted { attempts: usize },

    #[error("operator maps {input} to {output}; expected T-form (primal -> dual) or U-form (primal -> primal)")]
    UnsupportedForm { input: Side, output: Side },

    #[error("not essentially Fourier: {0}")]
    Recovery(#[from] RecoveryFailure),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
