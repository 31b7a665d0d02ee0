use thiserror::Error;

use crate::term::SystemTag;

/// Errors produced by term construction, parsing and evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("term mixes stepwise and simultaneous symbols")]
    MixedSystems,
    #[error("expected a {expected} term")]
    WrongSystem { expected: SystemTag },
    #[error("decimal literal {0} exceeds the limit of 1000000")]
    SugarOverflow(String),
    #[error("invalid term: {0}")]
    Invalid(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("budget exceeded after {steps} steps at n = {n} with term {term}")]
    Budget { term: String, n: u64, steps: u64 },
    #[error("internal error: {0}")]
    Internal(String),
}

impl OrdError {
    /// Process exit status used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            OrdError::Syntax { .. }
            | OrdError::MixedSystems
            | OrdError::WrongSystem { .. }
            | OrdError::SugarOverflow(_) => 1,
            OrdError::Invalid(_) | OrdError::Domain(_) | OrdError::Internal(_) => 2,
            OrdError::Budget { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, OrdError>;
