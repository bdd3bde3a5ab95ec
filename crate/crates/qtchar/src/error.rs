use thiserror::Error;

use crate::monomial::Monomial;

/// Errors surfaced by construction, arithmetic and the character algorithms.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown algebra type `{0}`")]
    UnknownType(String),

    #[error("invalid label system: {0}")]
    InvalidLabels(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("ring mismatch: {0}")]
    SchemeMismatch(String),

    #[error("monomial is outside the image ring: {reason} (offending monomial `{monomial}`)")]
    Identification { reason: String, monomial: String },

    #[error("consistency check failed at `{monomial}`: {reason}")]
    Consistency { monomial: String, reason: String },

    #[error("resource cap exceeded: {0}")]
    Resource(String),

    #[error("not in kernel: witness monomial `{0}`")]
    NotInKernel(String),

    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("fixture dims mismatch: header says {expected}, terms give {actual}")]
    DimsMismatch { expected: String, actual: String },
}

impl Error {
    pub(crate) fn consistency(m: &Monomial, reason: impl Into<String>) -> Self {
        Error::Consistency {
            monomial: format!("{m:?}"),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
