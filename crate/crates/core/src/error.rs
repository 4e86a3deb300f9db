use thiserror::Error;

use crate::partition::Partition;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("polynomial arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },

    #[error("variable x{index} out of range for a polynomial in {num_vars} variables")]
    VariableOutOfRange { index: usize, num_vars: usize },

    #[error("expected {expected} values, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("{what} = {requested} exceeds the enumeration cap {cap} (override with {flag})")]
    CapExceeded {
        what: &'static str,
        requested: u64,
        cap: u64,
        flag: &'static str,
    },

    #[error("weight mismatch: |lambda| = {lambda}, |mu| = {mu}")]
    WeightMismatch { lambda: u32, mu: u32 },

    #[error("missing prerequisite coefficient b_{lambda}^{mu}")]
    MissingEntry { lambda: Partition, mu: Partition },

    #[error("coefficient table covers weight {have}, weight {needed} required")]
    InsufficientScope { needed: u32, have: u32 },

    #[error("matrix is singular")]
    Singular,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
