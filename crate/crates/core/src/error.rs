use std::fmt;

use thiserror::Error;

/// One structural problem found while validating an instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Zero-based player index, when the problem is local to a player.
    pub player: Option<usize>,
    pub field: &'static str,
    pub message: String,
}

impl Violation {
    pub fn new(player: Option<usize>, field: &'static str, message: String) -> Self {
        Violation { player, field, message }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.player {
            Some(i) => write!(f, "player {}: {}: {}", i + 1, self.field, self.message),
            None => write!(f, "{}: {}", self.field, self.message),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("budget of {0} steps exceeded")]
    BudgetExceeded(u64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
