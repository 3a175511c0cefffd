//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors surfaced by the toolkit.
///
/// Variants follow the failure classes used throughout the crate: shape
/// mismatches, resource guards, violated preconditions (contracts), domain
/// errors of the underlying mathematics, numerical-contract failures
/// (quantities that must be real or converge), the explicit atypical-sequence
/// signal of the classical codebook, and parse/validation failures of the
/// file formats.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("resource guard: {0}")]
    Resource(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numerical contract violated: {0}")]
    Numerical(String),

    #[error("atypical sequence: {0}")]
    Atypical(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("validation error: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
