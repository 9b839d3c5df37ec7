//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid model parameters (n = {n}, q = {q}): {reason}")]
    InvalidParams { n: usize, q: usize, reason: &'static str },

    #[error("vector length {len} is not a power of two")]
    NotPowerOfTwo { len: usize },

    #[error("invalid local dimension q = {q}, need q >= 2")]
    InvalidLocalDimension { q: usize },

    #[error("gate pair ({i}, {j}) invalid for n = {n} qudits")]
    InvalidPair { i: usize, j: usize, n: usize },

    #[error("layer {layer}: qudit {qudit} appears in more than one pair")]
    OverlappingPair { layer: usize, qudit: usize },

    #[error("layer {layer}: qudit index {qudit} out of range for n = {n}")]
    QuditOutOfRange { layer: usize, qudit: usize, n: usize },

    #[error("model parameter mismatch: {0}")]
    ParamsMismatch(String),

    #[error("Hamming weight {weight} out of range 0..={n}")]
    WeightOutOfRange { weight: usize, n: usize },

    #[error("{what} needs n <= {cap}, got n = {n}")]
    ResourceCap { what: &'static str, cap: usize, n: usize },

    #[error("architecture document: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("inconsistent data: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
