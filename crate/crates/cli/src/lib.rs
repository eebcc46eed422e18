//! Configuration-driven scenario runner for the `diatomic` library.
//!
//! Three commands: `dispersion` writes the lattice constants and branch
//! tables, `simulate` writes one CSV per method and time, `compare` writes
//! pairwise error norms as `key = value` lines.

pub mod commands;
pub mod config;

use thiserror::Error;

/// Failures, split by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad or inconsistent configuration (exit code 2).
    #[error("configuration error: {0}")]
    Config(String),
    /// A solver or evaluator failed (exit code 3).
    #[error("numerical error: {0}")]
    Numerical(#[from] diatomic::Error),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    /// A library error raised while interpreting the configuration.
    pub fn from_config(e: diatomic::Error) -> Self {
        CliError::Config(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io { .. } => 1,
        }
    }
}
