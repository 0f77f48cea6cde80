use thiserror::Error;

use crate::subset::SubsetWord;

/// Everything that can go wrong in this crate.
///
/// The three broad classes map onto process exit codes in the CLI: usage and
/// parse problems are caller mistakes, invariant violations mean a structural
/// claim about VC-bounded families failed on a concrete instance (or a bug).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A member has every proper subset realized as a trace, so the family
    /// shatters it and its VC-dimension is k.
    #[error("member {0} is shattered by the family (no certificate exists)")]
    MemberShattered(SubsetWord),

    #[error("invariant violation [{check}]: {detail}")]
    InvariantViolation { check: &'static str, detail: String },
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn violation(check: &'static str, detail: impl Into<String>) -> Self {
        Error::InvariantViolation {
            check,
            detail: detail.into(),
        }
    }

    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::InvariantViolation { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
