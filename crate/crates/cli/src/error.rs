use std::path::PathBuf;

use isoptic::GeomError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid input: {0}")]
    Parse(String),
    #[error("degenerate geometry: {0}")]
    Geometry(#[from] GeomError),
}

impl CliError {
    /// 1 for usage, parse and I/O failures, 2 for geometric degeneracies.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Geometry(GeomError::InvalidSpec(_)) => 1,
            Self::Geometry(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
