use thiserror::Error;

/// Errors surfaced by the library. Variants that signal internal
/// inconsistencies (`Internal`) indicate a bug, never bad input.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid Dynkin type: {0}")]
    InvalidType(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("automorphism spec rejected: {0}")]
    MarkConstraint(String),

    #[error("unknown space '{name}'{}", suggestion.as_ref().map(|s| format!(" (did you mean '{s}'?)")).unwrap_or_default())]
    UnknownSpace {
        name: String,
        suggestion: Option<String>,
    },

    #[error("exact arithmetic would need a sum of unlike radicals; re-evaluate in floating point")]
    IrrationalSum,

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
