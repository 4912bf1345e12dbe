// SPDX-License-Identifier: Apache-2.0

//! The rule-table file format and rule loading.
//!
//! ```json
//! {"m":3,"n":1,"alternatives":["a","b","c"],"table":[[0,1],[0,2],...]}
//! ```
//!
//! `table` is ordered by profile index. Files are written compactly with a
//! trailing newline, so equal tables always produce identical bytes.

use std::path::Path;

use consul_core::rules::{self, NamedRule};
use consul_core::{alternative_name, tabulate, Budget, Committee, RuleTable, MAX_ALTERNATIVES};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Serialize, Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct RuleFile {
    m: usize,
    n: usize,
    alternatives: Vec<String>,
    table: Vec<[u8; 2]>,
}

pub fn to_json(table: &RuleTable) -> String {
    let file = RuleFile {
        m: table.m(),
        n: table.n(),
        alternatives: (0..table.m() as u8).map(alternative_name).collect(),
        table: table.outcomes().iter().map(|c| [c.lo(), c.hi()]).collect(),
    };
    let mut out = serde_json::to_string(&file).expect("plain data serialises");
    out.push('\n');
    out
}

/// Parses and validates a rule file. `origin` names the source in errors.
pub fn from_json(text: &str, origin: &Path) -> Result<RuleTable> {
    let file: RuleFile = serde_json::from_str(text).map_err(|source| CliError::Json {
        path: origin.to_path_buf(),
        source,
    })?;
    let invalid = |why: String| CliError::Invalid(format!("{}: {why}", origin.display()));
    if !(2..=MAX_ALTERNATIVES).contains(&file.m) {
        return Err(invalid(format!("m must be in 2..={MAX_ALTERNATIVES}, got {}", file.m)));
    }
    if file.alternatives.len() != file.m {
        return Err(invalid(format!("{} alternative names for m = {}", file.alternatives.len(), file.m)));
    }
    let mut names = file.alternatives.clone();
    names.sort();
    names.dedup();
    if names.len() != file.m || names.iter().any(String::is_empty) {
        return Err(invalid("alternative names must be distinct and nonempty".into()));
    }
    let outcomes = file
        .table
        .iter()
        .enumerate()
        .map(|(i, &[lo, hi])| {
            if lo >= hi {
                return Err(invalid(format!("entry {i}: [{lo},{hi}] is not an increasing pair")));
            }
            Committee::new(lo, hi).map_err(CliError::from)
        })
        .collect::<Result<Vec<_>>>()?;
    RuleTable::new(file.m, file.n, outcomes).map_err(|e| invalid(e.to_string()))
}

pub fn read_table(path: &Path) -> Result<RuleTable> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::file(path, e))?;
    from_json(&text, path)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| CliError::file(path, e))
}

/// A rule given on the command line.
pub struct LoadedRule {
    /// The path or registry identifier it came from.
    pub source: String,
    pub table: RuleTable,
}

/// Reads `source` as a file if one exists there, otherwise builds it from the registry.
pub fn load_rule(source: &str, budget: Budget) -> Result<LoadedRule> {
    let path = Path::new(source);
    let table = if path.is_file() {
        read_table(path)?
    } else {
        let rule = construct(source)?;
        tabulate(&rule, budget)?
    };
    Ok(LoadedRule { source: source.to_owned(), table })
}

/// Registry lookup, reporting a missing file when the source looks like a path.
pub fn construct(source: &str) -> Result<NamedRule> {
    match rules::construct(source) {
        Err(consul_core::Error::UnknownRule(_)) if looks_like_path(source) => Err(CliError::file(
            source,
            std::io::Error::new(std::io::ErrorKind::NotFound, "no such file"),
        )),
        other => Ok(other?),
    }
}

fn looks_like_path(s: &str) -> bool {
    s.contains(['/', '\\']) || s.ends_with(".json")
}

#[cfg(test)]
mod tests {
    use super::*;
    use consul_core::Rule;

    fn origin() -> &'static Path {
        Path::new("test.json")
    }

    #[test]
    fn round_trip_is_byte_exact() {
        let t = rules::marian_majority(3, 2).tabulate(Budget::default()).unwrap();
        let text = to_json(&t);
        assert!(text.ends_with("]]}\n"));
        assert!(text.starts_with(r#"{"m":3,"n":2,"alternatives":["a","b","c"],"table":[[0,1],"#));
        let back = from_json(&text, origin()).unwrap();
        assert_eq!(back, t);
        assert_eq!(to_json(&back), text);
    }

    #[test]
    fn rejects_bad_files() {
        let ok = r#"{"m":2,"n":1,"alternatives":["a","b"],"table":[[0,1],[0,1]]}"#;
        assert!(from_json(ok, origin()).is_ok());
        for bad in [
            r#"{"m":2,"n":1,"alternatives":["a","b"],"table":[[0,1]]}"#,
            r#"{"m":2,"n":1,"alternatives":["a","b"],"table":[[0,1],[1,0]]}"#,
            r#"{"m":2,"n":1,"alternatives":["a","b"],"table":[[0,1],[0,2]]}"#,
            r#"{"m":2,"n":1,"alternatives":["a"],"table":[[0,1],[0,1]]}"#,
            r#"{"m":2,"n":1,"alternatives":["a","a"],"table":[[0,1],[0,1]]}"#,
            r#"{"m":2,"n":1,"alternatives":["a","b"],"table":[[0,1],[0,1]],"extra":1}"#,
            r#"{"m":1,"n":1,"alternatives":["a"],"table":[]}"#,
            r#"{"m":2,"n":1"#,
        ] {
            assert!(from_json(bad, origin()).is_err(), "{bad}");
        }
    }

    #[test]
    fn unknown_sources() {
        assert!(matches!(
            load_rule("no_such_rule", Budget::default()),
            Err(CliError::Core(consul_core::Error::UnknownRule(_)))
        ));
        assert!(matches!(load_rule("missing/rule.json", Budget::default()), Err(CliError::File { .. })));
        assert!(matches!(
            load_rule("dictator:4,3,0", Budget(1000)),
            Err(CliError::Core(consul_core::Error::BudgetExceeded { .. }))
        ));
    }
}
