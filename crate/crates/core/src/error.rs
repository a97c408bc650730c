use thiserror::Error;

use crate::gf2::BitVec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("{what} out of range: {detail}")]
    Range { what: &'static str, detail: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("code encodes {logical} logical qubits; promote the extra logical operators to stabilizers so exactly one remains")]
    NotSingleLogical { logical: usize },

    #[error("no X-type frame anticommutes exactly with the negative Z stabilizers (sign pattern {pattern})")]
    SignFixing { pattern: String },

    #[error("column {column} of A_X is zero: Z errors on that qubit have no syndrome")]
    NoSyndrome { column: usize },

    #[error("A_X has repeated columns {first} and {second}; apply the nondegenerate reduction first")]
    Degenerate { first: usize, second: usize },

    #[error("A_Z * A_X^T is not zero mod 2 (row {z_row} of A_Z against row {x_row} of A_X)")]
    NotCss { x_row: usize, z_row: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn dim(expected: usize, found: usize) -> Self {
        Error::Dimension { expected, found }
    }

    pub(crate) fn range(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Range {
            what,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(v: &BitVec, expected: usize) -> Result<()> {
    if v.len() != expected {
        return Err(Error::dim(expected, v.len()));
    }
    Ok(())
}
