//! Crate-wide error type.

/// Errors surfaced by the data, model, training and evaluation layers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("decode error at byte offset {offset}: {reason}")]
    Decode { offset: u64, reason: String },

    #[error("corrupt data: {0}")]
    Corrupt(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-finite value in {term}")]
    NonFinite { term: String },

    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error("unsupported checkpoint version {found}, expected {expected}")]
    CheckpointVersion { found: u8, expected: u8 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by bad user input (config/arguments) rather
    /// than a runtime failure. The CLI maps these to exit code 2.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Config(_) | Error::InvalidArgument(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
