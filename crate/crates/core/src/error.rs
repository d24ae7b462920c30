use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input values: bad factor descriptors, invalid resolution data.
    #[error("validation error: {0}")]
    Validation(String),
    /// A realization is not defined on some factor of the input.
    #[error("realization undefined: {0}")]
    Realization(String),
    /// The point-count oracle refused the query.
    #[error("oracle error: {0}")]
    Oracle(String),
    /// Structurally malformed JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable kind, used in structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Validation(_) => "validation",
            Error::Realization(_) => "realization",
            Error::Oracle(_) => "oracle",
            Error::Parse(_) => "parse",
        }
    }

    pub fn detail(&self) -> String {
        match self {
            Error::Validation(s) | Error::Realization(s) | Error::Oracle(s) | Error::Parse(s) => {
                s.clone()
            }
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
