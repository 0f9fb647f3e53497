//! Experiment runner behind the `conewave` binary: configuration, sweeps,
//! result tables and the Bessel-zero cache.

// `!(x < y)` guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod experiments;
pub mod output;
pub mod zero_cache;

use std::path::PathBuf;

pub use config::{Experiment, RunConfig};
pub use experiments::{run, RunOutcome};
pub use output::{Check, Row, Summary, SUMMARY_SCHEMA};
pub use zero_cache::ZeroCache;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{context}: {source}")]
    Numerics {
        context: String,
        #[source]
        source: conewave_core::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("zero cache {path}: {reason}")]
    Checksum { path: PathBuf, reason: String },
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Attaches a description of what was being computed to core errors.
pub(crate) trait Context<T> {
    fn context(self, what: impl FnOnce() -> String) -> Result<T>;
}

impl<T> Context<T> for conewave_core::Result<T> {
    fn context(self, what: impl FnOnce() -> String) -> Result<T> {
        self.map_err(|source| CliError::Numerics { context: what(), source })
    }
}

pub(crate) fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
    let path = path.into();
    move |source| CliError::Io { path, source }
}
