use std::path::PathBuf;

use systole_core::lefschetz::LefschetzError;
use systole_core::rauzy::RauzyError;
use systole_core::search::SearchError;
use systole_core::twist::TwistError;

use crate::parse::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Lefschetz(#[from] LefschetzError),
    #[error(transparent)]
    Rauzy(#[from] RauzyError),
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("checkpoint {path} was written for another configuration (hash {found}, expected {expected})")]
    CheckpointMismatch {
        path: PathBuf,
        expected: String,
        found: String,
    },
    #[error("checkpoint {path} is corrupt: {reason}")]
    CorruptCheckpoint { path: PathBuf, reason: String },
    #[error("run stopped after {0} shards")]
    Interrupted(usize),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}
