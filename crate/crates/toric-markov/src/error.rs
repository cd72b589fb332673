//! Error types shared across the crate.

use num_bigint::{BigInt, BigUint};
use thiserror::Error;

use crate::fiber::FiberKey;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// The input matrix has no rows or no columns.
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    /// Rows of the input matrix have different lengths.
    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        got: usize,
        expected: usize,
    },

    /// A column of the input matrix is identically zero.
    #[error("column {col} is zero; fibers would be infinite")]
    ZeroColumn { col: usize },

    /// The matrix is not a configuration matrix: a nonzero nonnegative kernel
    /// vector exists and is returned as a certificate.
    #[error("not a configuration matrix: kernel contains nonnegative vector {certificate:?}")]
    NotConfiguration { certificate: Vec<BigInt> },

    /// A fiber key has the wrong number of coordinates for the matrix.
    #[error("fiber key has {got} coordinates, matrix has {expected} rows")]
    KeyDimension { got: usize, expected: usize },

    /// A fiber exceeded the configured element cap. Truncating would corrupt
    /// every downstream count, so this is a hard error.
    #[error("fiber {key} has more than {limit} elements")]
    FiberTooLarge { key: FiberKey, limit: usize },

    /// The completion engine ran out of its S-pair or wall-clock budget.
    #[error(
        "completion budget exceeded after {pairs_processed} S-pairs \
         (basis size {basis_size}, saturating variable {variable} of {variables})"
    )]
    BudgetExceeded {
        pairs_processed: usize,
        basis_size: usize,
        variable: usize,
        variables: usize,
    },

    /// Materializing an enumeration would exceed the in-memory guard.
    /// Streaming consumption is unlimited; only `collect`-style calls hit this.
    #[error("{count} minimal Markov bases exceed the materialization limit {limit}")]
    TooManyBases { count: BigUint, limit: usize },

    /// A Prüfer sequence had the wrong length or an out-of-range label.
    #[error("bad Prüfer sequence: {reason}")]
    BadSequence { reason: String },

    /// A supplied move is not in the kernel of the matrix.
    #[error("move {index} with vector {vector:?} is not in the kernel")]
    MovesNotInKernel { index: usize, vector: Vec<i64> },

    /// A supplied seed basis fails to connect one of its own fibers, so it
    /// cannot generate the toric ideal.
    #[error("set does not generate: fiber {fiber} leaves {u:?} and {v:?} unconnected")]
    NotGenerating {
        fiber: FiberKey,
        u: Vec<i64>,
        v: Vec<i64>,
    },

    /// A supplied seed basis spans a proper sublattice of the kernel, so it
    /// cannot generate the toric ideal; a kernel vector outside its span is
    /// returned.
    #[error("seed basis does not span the kernel lattice: {missing:?} is not reachable")]
    SeedLatticeIncomplete { missing: Vec<BigInt> },

    /// Text input could not be parsed.
    #[error("parse error at line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },

    /// An intermediate value left the fixed-width range the enumeration
    /// kernels work in. Inputs at this scale are outside the tool's intended
    /// envelope (the exact bignum stages accept them, the combinatorial
    /// stages do not).
    #[error("value out of supported range while {context}")]
    Overflow { context: &'static str },
}

impl Error {
    /// Process exit code used by the command-line interface.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::EmptyMatrix
            | Error::RaggedRows { .. }
            | Error::ZeroColumn { .. }
            | Error::Parse { .. }
            | Error::KeyDimension { .. }
            | Error::BadSequence { .. } => 2,
            Error::NotConfiguration { .. } => 3,
            Error::FiberTooLarge { .. }
            | Error::BudgetExceeded { .. }
            | Error::TooManyBases { .. }
            | Error::Overflow { .. } => 4,
            Error::MovesNotInKernel { .. }
            | Error::NotGenerating { .. }
            | Error::SeedLatticeIncomplete { .. } => 5,
        }
    }
}
