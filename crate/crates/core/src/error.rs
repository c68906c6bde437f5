use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("accessory A (sensor) is absent or not responding")]
    AccessoryAbsent,

    #[error("expected {expected} bytes, got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("register read of {count} bytes at {start:#04x} is out of range")]
    ReadOutOfRange { start: u8, count: usize },

    #[error("accelerometer magnitude {magnitude:.4} g is too small to estimate tilt")]
    FreefallAmbiguous { magnitude: f64 },

    #[error("time went backwards: {now} ms after {prev} ms")]
    TimeWentBackwards { prev: u64, now: u64 },

    #[error("controller has not been initialized")]
    NotInitialized,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: t_ms {t_ms} does not increase past {prev} ms")]
    NonMonotonicTime { line: usize, prev: u64, t_ms: u64 },

    #[error("line {line}: {field} = {value} is out of range")]
    Range {
        line: usize,
        field: &'static str,
        value: i64,
    },

    #[error("trace is empty")]
    EmptyTrace,

    #[error("window holds fewer than two cursor samples")]
    WindowEmpty,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("row {row}: {source}")]
    Replay {
        row: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by the filesystem rather than by the input's content.
    pub fn is_io(&self) -> bool {
        match self {
            Error::Io { .. } => true,
            Error::Replay { source, .. } => source.is_io(),
            _ => false,
        }
    }
}
