//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("quantum characteristic must be in 2..=255, got {0}")]
    QuantumChar(u32),

    #[error("[n]_q requires n >= 1")]
    QuantumIntOutOfRange,

    #[error("not a valid partition: {0}")]
    InvalidPartition(String),

    #[error("partition sizes differ: {0} vs {1}")]
    SizeMismatch(u32, u32),

    #[error("({mu}) does not dominate ({lambda})")]
    NotDominated { mu: String, lambda: String },

    #[error("partition ({0}) is not {1}-restricted")]
    NotRestricted(String, u32),

    #[error("operation undefined for the empty partition")]
    EmptyPartition,

    #[error("node ({row},{col}) is not removable")]
    NotRemovable { row: u32, col: u32 },

    #[error("residue sequence has length {got}, expected {want}")]
    LengthMismatch { got: usize, want: usize },

    #[error("|({0})| = {1} exceeds the tableau enumeration limit {2}; use specht_multiplicity instead")]
    EnumerationLimit(String, u32, u32),

    #[error("exact division failed: {f} is not divisible by {g}")]
    Division { f: String, g: String },

    #[error("inconsistent input to the two-part solver: {0}")]
    InconsistentInput(String),

    #[error("identity violation: {0}")]
    IdentityViolation(String),

    #[error("while computing entry (({mu}), ({lambda})): {source}")]
    AtPair {
        mu: String,
        lambda: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wrap an error with the (mu, lambda) pair whose entry was being computed.
    pub fn at_pair(self, mu: impl Into<String>, lambda: impl Into<String>) -> Error {
        Error::AtPair {
            mu: mu.into(),
            lambda: lambda.into(),
            source: Box::new(self),
        }
    }

    /// True for errors that signal a bug in the computation itself rather
    /// than bad input: the theorems guarantee these cannot occur on valid
    /// runs, so hitting one means corrupted state upstream.
    pub fn is_internal(&self) -> bool {
        match self {
            Error::Division { .. }
            | Error::InconsistentInput(_)
            | Error::IdentityViolation(_) => true,
            Error::AtPair { source, .. } => source.is_internal(),
            _ => false,
        }
    }
}
