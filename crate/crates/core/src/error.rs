use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("non-integral coefficient: {0}")]
    NonIntegral(String),
    #[error("truncation insufficient: {0}")]
    TruncationInsufficient(String),
    #[error("no sign change on [{lo}, {hi}]")]
    InvalidInterval { lo: String, hi: String },
    #[error("not available: {0}")]
    NotAvailable(String),
    #[error("resource budget exceeded: estimated {estimated_bytes} bytes, budget {budget_bytes} bytes")]
    Budget { estimated_bytes: u64, budget_bytes: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
