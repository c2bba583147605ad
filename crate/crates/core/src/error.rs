use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain size mismatch: {0} vs {1}")]
    DomainMismatch(usize, usize),

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("enumeration cap exceeded: {what} (cap {cap})")]
    CapExceeded { what: String, cap: usize },

    #[error("group {0} is not enumerated")]
    NotEnumerated(String),

    #[error("element outside the group: {0}")]
    NotInGroup(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("factorization is not exact")]
    NotExact,

    /// A named precondition of a construction failed.
    #[error("precondition `{name}` failed: {detail}")]
    Precondition { name: String, detail: String },

    /// A map that was supposed to be a Rota-Baxter operator is not one.
    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown name: {0}")]
    Unknown(String),
}

impl Error {
    pub fn precondition(name: &str, detail: impl Into<String>) -> Self {
        Error::Precondition {
            name: name.to_string(),
            detail: detail.into(),
        }
    }

    pub fn cap(what: impl Into<String>, cap: usize) -> Self {
        Error::CapExceeded {
            what: what.into(),
            cap,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
