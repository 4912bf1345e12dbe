// SPDX-License-Identifier: Apache-2.0

use consul_core::Budget;

use crate::error::{CliError, Result};

pub const BUDGET_VAR: &str = "CONSUL_BUDGET";

/// Enumeration budget from `CONSUL_BUDGET`, or the default.
///
/// Accepts plain integers with optional `_` separators.
pub fn budget() -> Result<Budget> {
    match std::env::var(BUDGET_VAR) {
        Ok(raw) => parse_budget(&raw),
        Err(std::env::VarError::NotPresent) => Ok(Budget::default()),
        Err(e) => Err(CliError::Invalid(format!("{BUDGET_VAR}: {e}"))),
    }
}

pub fn parse_budget(raw: &str) -> Result<Budget> {
    raw.trim()
        .replace('_', "")
        .parse::<u64>()
        .map(Budget)
        .map_err(|_| CliError::Invalid(format!("{BUDGET_VAR}: `{raw}` is not a profile count")))
}
