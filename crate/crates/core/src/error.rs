use thiserror::Error;

/// A source location inside presentation text, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("specialization failed: {0}")]
    Specialization(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("rule rejected: {0}")]
    RuleRejected(String),
    #[error("{location}: syntax error: {message}")]
    Syntax { location: Location, message: String },
    #[error("{location}: unknown generator `{name}`")]
    UnknownGenerator { location: Location, name: String },
    #[error("{location}: {message}")]
    Invalid { location: Location, message: String },
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("missing action entry for {0}")]
    MissingAction(String),
    #[error("not a cleaving map: {0}")]
    NotCleaving(String),
    #[error("{0}")]
    Other(String),
}

impl Error {
    /// The location carried by a diagnostic, if any.
    pub fn location(&self) -> Option<Location> {
        match self {
            Error::Syntax { location, .. }
            | Error::UnknownGenerator { location, .. }
            | Error::Invalid { location, .. } => Some(*location),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
