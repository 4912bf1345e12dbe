// SPDX-License-Identifier: Apache-2.0

//! Structural results checked over every rule the search emits at small sizes.

mod common;

use common::{all_graphs, no_isolated_vertex, search, table};
use consul_core::linked::{build_alpha_domain, is_linked};
use consul_core::rangegraph::{
    all_vertices_in_3cycle, build_range_graph, diameter, is_acyclic, is_bipartite, is_edge_connected,
    triangle_for_edge, Diameter, GraphClass,
};
use consul_core::rules::{self, graph_dictator, NamedRule};
use consul_core::search::{enumerate_all_rules, PropertySet, SearchSpec};
use consul_core::strategy::{
    check_lex_sp, check_scf_strategyproof, check_spo, check_spp, verify_downward_monotonicity,
    verify_upward_monotonicity,
};
use consul_core::structure::{check_range_dictator, decompose, find_marius};
use consul_core::{Committee, Profile, RuleTable};

const SP_WV: &str = "spo,spp,weak-viability";

fn sp_tables() -> Vec<RuleTable> {
    let mut out = Vec::new();
    for (m, n) in [(3, 1), (3, 2), (3, 3), (4, 1)] {
        out.extend(search(m, n, "spo,spp").into_iter().map(|r| r.table));
    }
    out
}

#[test]
fn weakly_viable_sp_counts_follow_monotone_boolean_functions() {
    // Three choices of Marius times the non-constant monotone Boolean
    // functions of n voters (Dedekind numbers 3, 6, 20 minus the two
    // constants), plus the n strong dictators.
    for (n, dedekind) in [(1, 3), (2, 6), (3, 20)] {
        let records = search(3, n, SP_WV);
        assert_eq!(records.len(), 3 * (dedekind - 2) + n, "n = {n}");
        let marian = records.iter().filter(|r| r.classification.dictators.marius.is_some()).count();
        assert_eq!(marian, 3 * (dedekind - 2));
    }
}

#[test]
fn single_voter_sp_rules_are_graph_dictatorships() {
    for m in 3..=4 {
        let graphs: Vec<_> = all_graphs(m)
            .filter(|g| g.edge_count() > 0 && is_edge_connected(g).is_none())
            .collect();
        let all = search(m, 1, "spo,spp");
        assert_eq!(all.len(), graphs.len(), "m = {m}");
        let viable = search(m, 1, SP_WV);
        assert_eq!(viable.len(), graphs.iter().filter(|g| no_isolated_vertex(g)).count());
        let mut expected: Vec<RuleTable> = graphs
            .into_iter()
            .map(|g| table(graph_dictator(g, 0, 1).unwrap()))
            .collect();
        expected.sort();
        let found: Vec<RuleTable> = all.into_iter().map(|r| r.table).collect();
        assert_eq!(found, expected);
    }
}

#[test]
fn strategy_proof_ranges_are_edge_connected_and_monotone() {
    for t in sp_tables() {
        assert!(is_edge_connected(&build_range_graph(&t)).is_none());
        assert_eq!(verify_upward_monotonicity(&t), None);
        assert_eq!(verify_downward_monotonicity(&t), None);
    }
}

#[test]
fn reducibility_matches_bipartite_range() {
    for t in sp_tables() {
        let g = build_range_graph(&t);
        assert_eq!(decompose(&t).is_some(), is_bipartite(&g).is_some());
        if let Some(d) = decompose(&t) {
            assert!(check_scf_strategyproof(&d.left_rule));
            assert!(check_scf_strategyproof(&d.right_rule));
        }
    }
}

#[test]
fn weakly_viable_structure() {
    for (m, n) in [(3, 1), (3, 2), (3, 3), (4, 1)] {
        for r in search(m, n, SP_WV) {
            let t = &r.table;
            let g = build_range_graph(t);
            let c = &r.classification;
            assert_eq!(find_marius(t).is_some(), is_acyclic(&g));
            let expected = if c.class == GraphClass::Complete { 1 } else { 2 };
            if g.edge_count() >= 2 {
                assert_eq!(diameter(&g), Diameter::Finite(expected));
            }
            if c.reducible {
                assert_eq!(c.class, GraphClass::CompleteBipartite);
            } else {
                assert_eq!(all_vertices_in_3cycle(&g), None);
                for e in g.edges() {
                    assert!(triangle_for_edge(&g, e).unwrap().is_some());
                }
                assert!(!c.dictators.range_dictators.is_empty());
                let d = build_alpha_domain(m, &g).unwrap();
                assert!(is_linked(&d).unwrap().is_some());
            }
            if g.edge_count() >= 2 {
                assert!(c.dictators.range_dictators.len() <= 1);
            }
        }
    }
}

#[test]
fn irreducible_rules_have_range_dictators_at_three_and_four_alternatives() {
    let three = search(3, 2, "spo,spp,weak-viability,irreducible");
    let four = search(4, 1, "spo,spp,weak-viability,irreducible");
    assert_eq!(three.len(), 2);
    assert_eq!(four.len(), 7);
    for r in three.iter().chain(&four) {
        assert_eq!(r.classification.dictators.range_dictators.len(), 1);
    }
    assert!(search(3, 2, "spo,spp,weak-viability,irreducible,no-range-dictator").is_empty());
    assert!(search(4, 1, "spo,spp,weak-viability,irreducible,no-range-dictator").is_empty());
}

#[test]
fn lexicographic_strategy_proofness_versus_spo_and_spp() {
    let spec = SearchSpec::new(3, 1, PropertySet::empty());
    let (mut lex, mut both, mut agree) = (0, 0, 0);
    enumerate_all_rules(&spec, &mut || false, &mut |r| {
        let l = check_lex_sp(&r.table);
        let b = check_spo(&r.table) && check_spp(&r.table);
        lex += u32::from(l);
        both += u32::from(b);
        agree += u32::from(l == b);
    })
    .unwrap();
    assert_eq!((lex, both, agree), (7, 7, 729));
    for t in sp_tables() {
        assert!(check_lex_sp(&t));
    }
    assert!(!check_lex_sp(&table(rules::top_pair_plurality(3, 2))));
}

fn monotone_functions(n: usize) -> Vec<Vec<bool>> {
    // Truth tables over the 2^n vectors "voter i prefers the first alternative".
    let points = 1usize << n;
    (0u32..1 << points)
        .map(|bits| (0..points).map(|x| bits >> x & 1 == 1).collect::<Vec<bool>>())
        .filter(|f| {
            (0..points).all(|x| (0..points).all(|y| x & y != x || !f[x] || f[y]))
        })
        .collect()
}

fn composed(n: usize, f: Vec<bool>, g: Vec<bool>) -> NamedRule {
    NamedRule::new("composed", 4, n, move |p: &Profile| {
        let point = |x: u8, y: u8| {
            p.ballots()
                .iter()
                .enumerate()
                .fold(0usize, |acc, (i, b)| acc | usize::from(b.prefers(x, y)) << i)
        };
        let first = if f[point(0, 1)] { 0 } else { 1 };
        let second = if g[point(2, 3)] { 2 } else { 3 };
        Committee::new(first, second).unwrap()
    })
}

#[test]
fn composing_strategy_proof_halves() {
    for n in 1..=2 {
        let fs = monotone_functions(n);
        assert_eq!(fs.len(), [3, 6][n - 1]);
        for f in &fs {
            for g in &fs {
                let t = table(composed(n, f.clone(), g.clone()));
                assert!(check_spo(&t) && check_spp(&t));
            }
        }
    }
    let not_monotone = vec![true, false];
    let t = table(composed(1, not_monotone, vec![true, true]));
    assert!(!(check_spo(&t) && check_spp(&t)));
}

#[test]
fn graph_dictators_are_strategy_proof_with_their_graph_as_range() {
    for (m, n) in [(3, 2), (4, 2), (5, 1)] {
        for g in all_graphs(m).filter(|g| g.edge_count() > 0 && is_edge_connected(g).is_none()) {
            let t = table(graph_dictator(g, n - 1, n).unwrap());
            assert!(check_spo(&t) && check_spp(&t), "{g:?}");
            assert_eq!(build_range_graph(&t), g);
            assert!(check_range_dictator(&t).contains(&(n - 1)));
        }
    }
}
