use std::path::PathBuf;

use crate::series::Period;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("series `{left}` and `{right}` share no periods")]
    Alignment { left: String, right: String },

    #[error("currency mismatch: `{left}` is {left_currency}, `{right}` is {right_currency}")]
    Currency {
        left: String,
        left_currency: String,
        right: String,
        right_currency: String,
    },

    #[error("splice error: {0}")]
    Splice(String),

    #[error("period {period} not present in `{label}`")]
    MissingPeriod { label: String, period: Period },

    #[error("degenerate base: {0}")]
    DegenerateBase(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("cannot shift {count} exchanges out of `{good}`: only {available} available and at least one must remain")]
    FlowShift {
        good: String,
        count: u32,
        available: u32,
    },

    #[error("unknown good `{0}`")]
    UnknownGood(String),

    #[error("unknown series `{0}`")]
    UnknownSeries(String),

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("invalid economy: {0}")]
    InvalidEconomy(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("manifest error: {0}")]
    Manifest(String),

    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
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
