use thiserror::Error;

use crate::Int;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },

    #[error("unknown Lie type `{0}`")]
    UnknownType(String),

    #[error("unsupported affine diagram {0}")]
    UnsupportedAffine(String),

    #[error("vector {0:?} lies outside the generated root window")]
    OutOfWindow(Vec<Int>),

    #[error("invalid involution tuple: {0}")]
    InvalidSpec(String),

    #[error("invalid input: {0}")]
    Input(String),

    /// An internal consistency check failed. Always a bug or a mathematical
    /// surprise, never a user error.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::Invariant(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure;
