use std::path::PathBuf;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("fields or operators live on different grids")]
    GridMismatch,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("multiplier `{0}` does not map real fields to real fields")]
    NonRealMultiplier(String),

    #[error("numerical abort at t = {time}: {reason}")]
    NumericalAbort { time: f64, reason: String },

    #[error("iteration diverged after {iterations} iterations (residual {residual:.3e})")]
    Divergence { iterations: usize, residual: f64 },

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("missing neighbouring checkpoints: {0}")]
    MissingCheckpoints(String),

    #[error("configuration error:\n{0}")]
    Config(#[from] crate::runner::ConfigError),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed data in {path}: {reason}")]
    Format { path: PathBuf, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status: 2 configuration, 3 numerical abort, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NumericalAbort { .. } | Error::Divergence { .. } => 3,
            Error::Io { .. } | Error::Format { .. } => 4,
            _ => 2,
        }
    }

    pub fn is_numerical(&self) -> bool {
        self.exit_code() == 3
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
