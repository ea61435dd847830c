use thiserror::Error;

use crate::motives::PoincarePoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<u32>),
    #[error("partition {partition} does not fit the {rows}x{cols} box")]
    OutsideBox {
        partition: String,
        rows: u32,
        cols: u32,
    },
    #[error("invalid geometry (p={p}, n={n}, m={m}): {reason}")]
    InvalidSpec {
        p: u32,
        n: u32,
        m: u32,
        reason: String,
    },
    #[error("classes belong to different rings")]
    RingMismatch,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("Chern class index {index} outside 0..={rank}")]
    ChernIndex { index: i64, rank: u32 },
    #[error("non-exact division, remainder {remainder}")]
    NonExactDivision { remainder: PoincarePoly },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("corollary conditions need m >= 1")]
    CorollaryNeedsPositiveM,
    #[error("shift {k} outside 0..={max}")]
    ShiftOutOfRange { k: u32, max: u32 },
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("evaluation error: {0}")]
    Eval(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
