use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A user-facing parameter is outside its documented range.
    #[error("{field} must be within [{min}, {max}]{unit}, got {value}")]
    OutOfRange {
        field: &'static str,
        value: f64,
        min: f64,
        max: f64,
        unit: &'static str,
    },

    #[error("invalid filter: {0}")]
    Filter(String),

    #[error("feedback must be in [0, 1), got {0}")]
    UnstableFeedback(f64),

    #[error("invalid render configuration: {0}")]
    Config(String),

    #[error("strike draw r must lie in (0, 1), got {0}")]
    StrikeDraw(f64),

    #[error("cannot read WAV file {path}: {source}")]
    WavRead {
        path: PathBuf,
        #[source]
        source: hound::Error,
    },

    #[error("unsupported WAV format in {path}: {detail}")]
    WavFormat { path: PathBuf, detail: String },

    #[error("WAV encoding failed: {0}")]
    WavWrite(#[from] hound::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Name of the offending parameter, when the error is a range violation.
    pub fn field(&self) -> Option<&'static str> {
        match self {
            Error::OutOfRange { field, .. } => Some(field),
            _ => None,
        }
    }
}
