// SPDX-License-Identifier: Apache-2.0

//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use consul_core::rangegraph::RangeGraph;
use consul_core::search::{pruned_search, PropertySet, RuleRecord, SearchSpec};
use consul_core::{Budget, Rule, RuleTable};

pub fn table<R: Rule>(rule: R) -> RuleTable {
    rule.tabulate(Budget::default()).unwrap()
}

/// Every graph on `m` labelled vertices, empty graph first.
pub fn all_graphs(m: usize) -> impl Iterator<Item = RangeGraph> {
    let edges = m * (m - 1) / 2;
    (0..1u64 << edges).map(move |bits| RangeGraph::from_bits(m, bits))
}

/// Some four vertices induce two disjoint edges, a path on four vertices,
/// or a triangle with a pendant edge.
pub fn has_forbidden_induced_subgraph(g: &RangeGraph) -> bool {
    let m = g.m() as u8;
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                for d in c + 1..m {
                    let vs = [a, b, c, d];
                    let mut degrees = [0usize; 4];
                    let mut edges = 0;
                    for i in 0..4 {
                        for j in i + 1..4 {
                            if g.has_edge(vs[i], vs[j]) {
                                degrees[i] += 1;
                                degrees[j] += 1;
                                edges += 1;
                            }
                        }
                    }
                    degrees.sort_unstable();
                    let two_k2 = edges == 2 && degrees == [1, 1, 1, 1];
                    let p4 = edges == 3 && degrees == [1, 1, 2, 2];
                    let paw = edges == 4 && degrees == [1, 2, 2, 3];
                    if two_k2 || p4 || paw {
                        return true;
                    }
                }
            }
        }
    }
    false
}

pub fn no_isolated_vertex(g: &RangeGraph) -> bool {
    (0..g.m() as u8).all(|a| g.degree(a) > 0)
}

pub fn search(m: usize, n: usize, props: &str) -> Vec<RuleRecord> {
    let spec = SearchSpec::new(m, n, PropertySet::parse_list(props).unwrap());
    let mut out = Vec::new();
    let summary = pruned_search(&spec, &mut || false, &mut |r| out.push(r)).unwrap();
    assert!(summary.complete);
    out
}
