use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: voltage {voltage} V does not exceed the previous row ({previous} V)")]
    NotIncreasing {
        line: usize,
        voltage: f64,
        previous: f64,
    },

    #[error("{value} V is outside the table range [{min}, {max}] V")]
    OutOfRange { value: f64, min: f64, max: f64 },

    #[error("longitudinal configuration required: E and H must both lie along the symmetric axis (0,0,1)")]
    MisalignedFields,

    #[error("momentum balance system is singular for valley {valley}")]
    Singular { valley: usize },

    #[error("refusing to emit an empty result set")]
    EmptyResults,

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
}
