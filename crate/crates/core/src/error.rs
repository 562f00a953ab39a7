use thiserror::Error;

/// Errors raised by constructions, searches and verifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EppaError {
    /// Malformed arguments: out-of-range vertices, non-injective maps, bad parameters.
    #[error("invalid input: {0}")]
    Input(String),

    /// A configured size cap would be exceeded.
    #[error("capacity exceeded: {what} needs {requested}, limit is {limit}")]
    Capacity {
        what: String,
        requested: String,
        limit: String,
    },

    /// A documented precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An invariant that should be impossible to break was broken.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl EppaError {
    pub fn input(msg: impl Into<String>) -> Self {
        EppaError::Input(msg.into())
    }

    pub fn capacity(
        what: impl Into<String>,
        requested: impl ToString,
        limit: impl ToString,
    ) -> Self {
        EppaError::Capacity {
            what: what.into(),
            requested: requested.to_string(),
            limit: limit.to_string(),
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, EppaError::Capacity { .. })
    }
}

pub type Result<T, E = EppaError> = std::result::Result<T, E>;
