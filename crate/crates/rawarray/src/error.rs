use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Format(#[from] rawarray_core::Error),

    #[error("truncated data: header declares {expected} data bytes, {available} present")]
    TruncatedData { expected: u64, available: u64 },

    #[error("data length {len} exceeds the read limit of {limit} bytes; memory-map the file instead")]
    ExplicitlyTooLarge { len: u64, limit: u64 },

    #[error("memory mapping unavailable: {0}")]
    MappingUnsupported(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("expected {expected} {unit}, found {found}")]
    CountMismatch { expected: u64, found: u64, unit: &'static str },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported source shape: {0}")]
    UnsupportedSourceShape(String),

    #[error("dataset missing: {0}")]
    DatasetMissing(String),

    #[error("insufficient space: {0}")]
    InsufficientSpace(io::Error),

    #[error(transparent)]
    Io(io::Error),
}

impl From<io::Error> for Error {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::StorageFull {
            Error::InsufficientSpace(e)
        } else {
            Error::Io(e)
        }
    }
}

impl Error {
    /// True for errors caused by malformed input rather than the environment.
    pub fn is_malformed(&self) -> bool {
        matches!(
            self,
            Error::Format(_)
                | Error::TruncatedData { .. }
                | Error::CountMismatch { .. }
                | Error::Parse(_)
                | Error::UnsupportedSourceShape(_)
                | Error::InvariantViolation(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
