// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use thiserror::Error;

/// Process exit codes. These values are a stable contract.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExitStatus {
    Ok = 0,
    PropertyFalse = 1,
    BadInput = 2,
    Budget = 3,
    Incomplete = 4,
}

impl From<ExitStatus> for ExitCode {
    fn from(s: ExitStatus) -> Self {
        ExitCode::from(s as u8)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] consul_core::Error),
    #[error("search stopped after {0} s; results are incomplete")]
    Timeout(u64),
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Core(consul_core::Error::BudgetExceeded { .. }) => ExitStatus::Budget,
            CliError::Timeout(_) => ExitStatus::Incomplete,
            _ => ExitStatus::BadInput,
        }
    }

    pub(crate) fn file(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::File { path: path.into(), source }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
