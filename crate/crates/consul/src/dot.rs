// SPDX-License-Identifier: Apache-2.0

//! Graphviz output for range graphs.

use std::fmt::Write;

use consul_core::alternative_name;
use consul_core::rangegraph::RangeGraph;

/// Undirected DOT: every vertex on its own line, then edges in canonical order.
pub fn to_dot(g: &RangeGraph, name: &str) -> String {
    let mut out = String::new();
    let escaped = name.replace('\\', "\\\\").replace('"', "\\\"");
    writeln!(out, "graph \"{escaped}\" {{").unwrap();
    for a in 0..g.m() as u8 {
        writeln!(out, "  {};", alternative_name(a)).unwrap();
    }
    for e in g.edges() {
        writeln!(out, "  {} -- {};", alternative_name(e.lo()), alternative_name(e.hi())).unwrap();
    }
    out.push_str("}\n");
    out
}
