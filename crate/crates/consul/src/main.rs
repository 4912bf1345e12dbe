// SPDX-License-Identifier: Apache-2.0

use std::process::ExitCode;

use clap::Parser;
use consul::cli::{run, Cli};

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e}");
            e.status().into()
        }
    }
}
