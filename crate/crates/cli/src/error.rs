use std::path::PathBuf;

use thiserror::Error;

/// Failures that stop a run before (or while) reports are produced.
///
/// All of them map to exit code 2; failing checks are not errors.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("scenario parse error: {0}")]
    Parse(String),
    #[error("unsupported schema `{0}` (expected `{expected}`)", expected = crate::scenario::SCHEMA)]
    Schema(String),
    #[error("{kind} scenario is missing required key `{key}`")]
    MissingKey { kind: String, key: &'static str },
    #[error("invalid parameter `{key}`: {msg}")]
    BadParam { key: String, msg: String },
    #[error("check `{id}`: tolerance must be positive and finite (got {tol})")]
    BadTolerance { id: String, tol: f64 },
    #[error("unknown check `{id}` for {kind} scenarios")]
    UnknownCheck { id: String, kind: String },
    #[error("report serialization failed: {0}")]
    Report(String),
}

impl CliError {
    pub const EXIT_CODE: i32 = 2;
}

pub type CliResult<T> = std::result::Result<T, CliError>;
