// SPDX-License-Identifier: Apache-2.0

//! File formats, reports and the `consul` command-line driver on top of
//! [`consul_core`].

pub mod cli;
pub mod config;
pub mod dot;
pub mod error;
pub mod io;
pub mod report;

pub use error::{CliError, ExitStatus};
