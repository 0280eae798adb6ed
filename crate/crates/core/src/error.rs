use thiserror::Error;

use crate::polyring::Var;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("series must have order at least 1")]
    EmptySeries,
    #[error("series not invertible: zero constant term")]
    NotInvertible,
    #[error("no image given for variable {0}")]
    MissingImage(Var),
    #[error("expected a polynomial in x only, found generator {0}")]
    NotUnivariate(Var),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix size {0} exceeds the determinant limit of {max}", max = crate::polyring::MAX_DET_SIZE)]
    MatrixTooLarge(usize),
    #[error("matrix needs {expected} entries, got {got}")]
    BadMatrixShape { expected: usize, got: usize },
    #[error("derivations act on generators only; the variable x is not allowed")]
    DistinguishedVariable,
    #[error("derivation has no image for generator x{0}")]
    UndefinedImage(u32),
    #[error("invalid slice: {0}")]
    InvalidSlice(String),
    #[error("no vanishing power of the derivation within {0} steps")]
    NotNilpotent(usize),
    #[error("index {n} is below the minimum {min} for this family")]
    BelowMinimum { n: u32, min: u32 },
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("unknown output format {0:?}")]
    UnknownFormat(String),
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
