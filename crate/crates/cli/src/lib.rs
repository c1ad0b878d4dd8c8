//! Library side of the `optomirror` command-line tool.
//!
//! Each subcommand is a plain function that takes a [`RunConfig`] and a
//! writer, so the binary and the tests drive exactly the same code.

pub mod commands;
pub mod config;

use std::path::PathBuf;

use thiserror::Error;

pub use config::RunConfig;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A check ran but did not meet its tolerance.
    #[error("validation failed: {0}")]
    Validation(String),

    #[error(transparent)]
    Model(#[from] optomirror::Error),
}

impl CliError {
    /// Process exit code: 1 validation, 2 configuration, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Config(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Model(optomirror::Error::InvalidParameter { .. }) => 2,
            CliError::Model(_) => 1,
        }
    }

    /// The message without the variant prefix.
    pub fn message(&self) -> String {
        match self {
            CliError::Config(m) | CliError::Validation(m) => m.clone(),
            other => other.to_string(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

/// Reads a config file, or the defaults when `path` is `None`, then applies
/// `--set` overrides in order.
pub fn load_config(path: Option<&std::path::Path>, overrides: &[String]) -> Result<RunConfig, CliError> {
    let mut config = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::io(p, e))?;
            RunConfig::parse(&text)?
        }
        None => RunConfig::default(),
    };
    for assignment in overrides {
        config.apply_override(assignment)?;
    }
    Ok(config)
}
