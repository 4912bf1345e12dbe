// SPDX-License-Identifier: Apache-2.0

//! JSON reports for `check` and `analyze`.
//!
//! Report bodies depend only on the rule table, so a rule loaded from a file
//! and the same rule built from the registry give identical bytes. Run
//! information goes to a separate [`Meta`] sidecar.

use std::time::{SystemTime, UNIX_EPOCH};

use clap::ValueEnum;
use consul_core::linked::{build_alpha_domain, is_linked};
use consul_core::prefs::SetOrderKind;
use consul_core::rangegraph::{
    all_vertices_in_3cycle, build_range_graph, check_weak_viability, classify_graph, diameter, is_acyclic,
    is_bipartite, is_edge_connected, is_onto, Bipartition, Diameter, EdgeConnectivityViolation, GraphClass,
    RangeGraph,
};
use consul_core::strategy::{
    check_unanimous, check_veto, find_manipulation, verify_downward_monotonicity, verify_upward_monotonicity,
};
use consul_core::structure::{
    check_committee_unanimity, check_range_dictator, check_strong_dictator, check_weak_dictator, decompose,
    dictator_report, find_marius, Decomposition, DictatorReport,
};
use consul_core::{Alternative, Committee, RuleTable};
use serde::Serialize;
use serde_json::{json, Value};

/// Properties `check` can evaluate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckProperty {
    Spo,
    Spp,
    LexSp,
    WeakViability,
    Onto,
    Unanimity,
    Veto,
    CommitteeUnanimity,
    EdgeConnectivity,
    UpwardMonotonicity,
    DownwardMonotonicity,
    WeakDictator,
    StrongDictator,
    RangeDictator,
    NoRangeDictator,
    Marian,
    NonMarian,
    Reducible,
    Irreducible,
    Linked,
}

impl CheckProperty {
    pub const DEFAULT: [CheckProperty; 3] =
        [CheckProperty::Spo, CheckProperty::Spp, CheckProperty::WeakViability];
}

#[derive(Serialize, Debug)]
pub struct PropertyResult {
    pub property: CheckProperty,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Serialize, Debug)]
pub struct CheckReport {
    pub m: usize,
    pub n: usize,
    pub profiles: usize,
    pub properties: Vec<PropertyResult>,
    pub all_hold: bool,
}

fn value<T: Serialize>(x: T) -> Value {
    serde_json::to_value(x).expect("report data serialises")
}

fn with_witness<T: Serialize>(found: Option<T>) -> (bool, Option<Value>) {
    match found {
        Some(w) => (false, Some(value(w))),
        None => (true, None),
    }
}

fn voters(list: Vec<usize>, want_some: bool) -> (bool, Option<Value>) {
    (list.is_empty() != want_some, Some(json!({ "voters": list })))
}

fn linked(table: &RuleTable, g: &RangeGraph) -> (bool, Option<Value>) {
    match build_alpha_domain(table.m(), g).and_then(|d| is_linked(&d)) {
        Ok(Some(order)) => (true, Some(json!({ "order": order }))),
        Ok(None) => (false, None),
        Err(e) => (false, Some(json!({ "error": e.to_string() }))),
    }
}

pub fn evaluate(table: &RuleTable, p: CheckProperty) -> PropertyResult {
    use CheckProperty as P;
    let g = build_range_graph(table);
    let (holds, witness) = match p {
        P::Spo => with_witness(find_manipulation(table, SetOrderKind::Optimistic)),
        P::Spp => with_witness(find_manipulation(table, SetOrderKind::Pessimistic)),
        P::LexSp => with_witness(find_manipulation(table, SetOrderKind::Lexicographic)),
        P::WeakViability => {
            let isolated: Vec<Alternative> = (0..table.m() as Alternative).filter(|&a| g.degree(a) == 0).collect();
            (check_weak_viability(&g), (!isolated.is_empty()).then(|| json!({ "isolated": isolated })))
        }
        P::Onto => {
            let missing: Vec<Committee> = Committee::all(table.m()).filter(|&c| !g.contains(c)).collect();
            (is_onto(&g), (!missing.is_empty()).then(|| json!({ "missing": missing })))
        }
        P::Unanimity => (check_unanimous(table), None),
        P::Veto => (check_veto(table), None),
        P::CommitteeUnanimity => (check_committee_unanimity(table), None),
        P::EdgeConnectivity => with_witness(is_edge_connected(&g)),
        P::UpwardMonotonicity => with_witness(verify_upward_monotonicity(table)),
        P::DownwardMonotonicity => with_witness(verify_downward_monotonicity(table)),
        P::WeakDictator => voters(check_weak_dictator(table), true),
        P::StrongDictator => voters(check_strong_dictator(table), true),
        P::RangeDictator => voters(check_range_dictator(table), true),
        P::NoRangeDictator => voters(check_range_dictator(table), false),
        P::Marian => {
            let m = find_marius(table);
            (m.is_some(), Some(json!({ "marius": m })))
        }
        P::NonMarian => {
            let m = find_marius(table);
            (m.is_none(), Some(json!({ "marius": m })))
        }
        P::Reducible => {
            let d = decompose(table);
            (d.is_some(), d.map(|d| json!({ "left": d.left, "right": d.right })))
        }
        P::Irreducible => {
            let d = decompose(table);
            (d.is_none(), d.map(|d| json!({ "left": d.left, "right": d.right })))
        }
        P::Linked => linked(table, &g),
    };
    PropertyResult { property: p, holds, witness }
}

/// Evaluates `requested` in order, skipping repeats.
pub fn check(table: &RuleTable, requested: &[CheckProperty]) -> CheckReport {
    let mut seen = Vec::new();
    let properties: Vec<PropertyResult> = requested
        .iter()
        .filter(|p| {
            let fresh = !seen.contains(*p);
            seen.push(**p);
            fresh
        })
        .map(|&p| evaluate(table, p))
        .collect();
    CheckReport {
        m: table.m(),
        n: table.n(),
        profiles: table.len(),
        all_hold: properties.iter().all(|r| r.holds),
        properties,
    }
}

#[derive(Serialize, Debug)]
pub struct Linkedness {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Committee>>,
}

#[derive(Serialize, Debug)]
pub struct AnalyzeReport {
    pub m: usize,
    pub n: usize,
    pub profiles: usize,
    pub range: Vec<Committee>,
    pub class: GraphClass,
    pub onto: bool,
    pub weakly_viable: bool,
    pub edge_connected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_connectivity_violation: Option<EdgeConnectivityViolation>,
    pub bipartition: Option<Bipartition>,
    pub diameter: Diameter,
    pub acyclic: bool,
    /// First vertex lying on no triangle.
    pub vertex_off_triangle: Option<Alternative>,
    pub spo: bool,
    pub spp: bool,
    pub marius: Option<Alternative>,
    pub decomposition: Option<Decomposition>,
    pub dictators: DictatorReport,
    /// Absent when the range has fewer than two committees.
    pub linked: Option<Linkedness>,
}

pub fn analyze(table: &RuleTable) -> AnalyzeReport {
    let g = build_range_graph(table);
    let violation = is_edge_connected(&g);
    let linked = build_alpha_domain(table.m(), &g)
        .and_then(|d| is_linked(&d))
        .ok()
        .map(|w| Linkedness { holds: w.is_some(), witness: w });
    AnalyzeReport {
        m: table.m(),
        n: table.n(),
        profiles: table.len(),
        range: g.edges().collect(),
        class: classify_graph(&g),
        onto: is_onto(&g),
        weakly_viable: check_weak_viability(&g),
        edge_connected: violation.is_none(),
        edge_connectivity_violation: violation,
        bipartition: is_bipartite(&g),
        diameter: diameter(&g),
        acyclic: is_acyclic(&g),
        vertex_off_triangle: all_vertices_in_3cycle(&g),
        spo: find_manipulation(table, SetOrderKind::Optimistic).is_none(),
        spp: find_manipulation(table, SetOrderKind::Pessimistic).is_none(),
        marius: find_marius(table),
        decomposition: decompose(table),
        dictators: dictator_report(table),
        linked,
    }
}

/// Pretty JSON with a trailing newline.
pub fn render<T: Serialize>(report: &T) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report data serialises");
    out.push('\n');
    out
}

/// Run information kept out of report bodies.
#[derive(Serialize, Debug)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub source: String,
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
}

impl Meta {
    pub fn start(command: &str, source: &str) -> Self {
        let now = unix_ms();
        Meta {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_owned(),
            source: source.to_owned(),
            started_unix_ms: now,
            finished_unix_ms: now,
        }
    }

    pub fn finish(mut self) -> Self {
        self.finished_unix_ms = unix_ms();
        self
    }
}

fn unix_ms() -> u128 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use consul_core::{rules, Budget, Rule};

    fn table(r: impl Rule) -> RuleTable {
        r.tabulate(Budget::default()).unwrap()
    }

    #[test]
    fn apple_orange_checks() {
        let report = check(&table(rules::apple_orange()), &CheckProperty::DEFAULT);
        assert!(report.all_hold);
        assert!(report.properties.iter().all(|p| p.witness.is_none()));
    }

    #[test]
    fn split_majority_has_no_weak_dictator() {
        let report = check(&table(rules::split_majority(2)), &[CheckProperty::WeakDictator]);
        assert!(!report.all_hold);
        assert_eq!(report.properties[0].witness, Some(json!({ "voters": [] })));
    }

    #[test]
    fn mutated_table_has_manipulation_witness() {
        let t = table(rules::apple_orange()).mutate(0, Committee::new(2, 3).unwrap()).unwrap();
        let report = check(&t, &[CheckProperty::Spo, CheckProperty::Spo]);
        assert_eq!(report.properties.len(), 1);
        let w = report.properties[0].witness.as_ref().unwrap();
        assert_eq!(w["kind"], "optimistic");
        assert!(w["misreport"].is_array());
    }

    #[test]
    fn analyze_fixtures() {
        let r = analyze(&table(rules::apple_orange()));
        assert_eq!(r.range.len(), 5);
        assert!(r.decomposition.is_none());
        assert_eq!(r.dictators.range_dictators, [0]);
        assert!(r.linked.as_ref().unwrap().holds);
        let r = analyze(&table(rules::split_majority(2)));
        assert_eq!(r.class, GraphClass::CompleteBipartite);
        assert!(r.decomposition.is_some());
        assert!(!r.linked.as_ref().unwrap().holds);
        let r = analyze(&table(rules::dictator(4, 1, 0)));
        assert_eq!(r.class, GraphClass::Complete);
        assert_eq!(r.dictators.strong_dictators, [0]);
        let r = analyze(&table(rules::constant(3, 1, Committee::new(0, 1).unwrap())));
        assert!(r.linked.is_none());
        assert_eq!(r.diameter, Diameter::Infinite);
    }
}
