// SPDX-License-Identifier: Apache-2.0

//! Enumeration of rule tables under property constraints.
//!
//! Both engines emit passing tables in lexicographic order of their outcome
//! sequences (profile index ascending, committees in canonical order), so
//! their outputs can be compared line by line.
//!
//! The pruned engine assigns outcomes depth first in profile order and
//! forward-checks every single-voter deviation against the assignment. When
//! both strategy-proofness properties are required it also enforces the
//! upward and downward monotonicity lemmas on those deviations, and when weak
//! viability is required too it forces unanimity. Every complete assignment
//! is re-checked against the full property list before it is emitted.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::prefs::{strictly_prefers, SetOrderKind};
use crate::profile::{factorial, Alternative, Ballot, Budget, ProfileSpace};
use crate::rangegraph::{
    build_range_graph, check_weak_viability, classify_graph, is_acyclic, is_edge_connected,
    GraphClass, RangeGraph,
};
use crate::strategy::{
    check_spo, check_spp, check_unanimous, downward_clause_broken, upward_clause_broken,
};
use crate::structure::{check_range_dictator, decompose, dictator_report, find_marius, DictatorReport};
use crate::{Committee, Error, Result, RuleTable};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "kebab-case"))]
pub enum Property {
    Spo,
    Spp,
    WeakViability,
    Unanimity,
    Irreducible,
    NonMarian,
    NoRangeDictator,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::Spo,
        Property::Spp,
        Property::WeakViability,
        Property::Unanimity,
        Property::Irreducible,
        Property::NonMarian,
        Property::NoRangeDictator,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Property::Spo => "spo",
            Property::Spp => "spp",
            Property::WeakViability => "weak-viability",
            Property::Unanimity => "unanimity",
            Property::Irreducible => "irreducible",
            Property::NonMarian => "non-marian",
            Property::NoRangeDictator => "no-range-dictator",
        }
    }

    fn bit(self) -> u8 {
        1 << self as u8
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Property {
    type Err = Error;

    /// Accepts `-` or `_` as the word separator.
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().replace('_', "-").to_ascii_lowercase();
        Property::ALL
            .into_iter()
            .find(|p| p.as_str() == norm)
            .ok_or_else(|| Error::UnknownProperty(s.into()))
    }
}

/// A set of properties, iterated in declaration order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PropertySet(u8);

impl PropertySet {
    pub fn empty() -> Self {
        PropertySet(0)
    }

    pub fn from_bits(bits: u8) -> Self {
        PropertySet(bits & ((1 << Property::ALL.len()) - 1))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn with(mut self, p: Property) -> Self {
        self.0 |= p.bit();
        self
    }

    pub fn contains(self, p: Property) -> bool {
        self.0 & p.bit() != 0
    }

    pub fn iter(self) -> impl Iterator<Item = Property> {
        Property::ALL.into_iter().filter(move |&p| self.contains(p))
    }

    /// Comma separated names, e.g. `spo,spp,weak-viability`. Empty input is the empty set.
    pub fn parse_list(s: &str) -> Result<Self> {
        s.split(',')
            .filter(|t| !t.trim().is_empty())
            .try_fold(PropertySet::empty(), |set, t| Ok(set.with(t.parse()?)))
    }
}

impl FromIterator<Property> for PropertySet {
    fn from_iter<I: IntoIterator<Item = Property>>(iter: I) -> Self {
        iter.into_iter().fold(PropertySet::empty(), PropertySet::with)
    }
}

impl fmt::Debug for PropertySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for PropertySet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "kebab-case"))]
pub enum Engine {
    Naive,
    Pruned,
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Engine::Naive),
            "pruned" => Ok(Engine::Pruned),
            _ => Err(Error::InvalidParameters {
                rule: "engine".into(),
                reason: alloc::format!("unknown engine `{s}`"),
            }),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SearchSpec {
    pub m: usize,
    pub n: usize,
    pub required: PropertySet,
    /// Cap on profiles per table.
    #[cfg_attr(feature = "serde", serde(skip))]
    pub profile_budget: Budget,
    /// Cap on tables visited by the naive engine.
    #[cfg_attr(feature = "serde", serde(skip))]
    pub naive_budget: u64,
    /// Lets the pruned engine use monotonicity and forced unanimity.
    pub lemma_pruning: bool,
}

impl SearchSpec {
    pub const DEFAULT_NAIVE_BUDGET: u64 = 10_000_000;

    pub fn new(m: usize, n: usize, required: PropertySet) -> Self {
        SearchSpec {
            m,
            n,
            required,
            profile_budget: Budget::default(),
            naive_budget: Self::DEFAULT_NAIVE_BUDGET,
            lemma_pruning: true,
        }
    }

    fn space(&self) -> Result<ProfileSpace> {
        if self.m < 2 || self.n < 1 {
            return Err(Error::TooSmall { m: self.m, n: self.n, min: 2 });
        }
        ProfileSpace::new(self.m, self.n, self.profile_budget)
    }
}

/// Every property evaluated on one table.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PropertyVector {
    pub spo: bool,
    pub spp: bool,
    pub weak_viability: bool,
    pub unanimity: bool,
    pub irreducible: bool,
    pub non_marian: bool,
    pub no_range_dictator: bool,
}

impl PropertyVector {
    pub fn get(&self, p: Property) -> bool {
        match p {
            Property::Spo => self.spo,
            Property::Spp => self.spp,
            Property::WeakViability => self.weak_viability,
            Property::Unanimity => self.unanimity,
            Property::Irreducible => self.irreducible,
            Property::NonMarian => self.non_marian,
            Property::NoRangeDictator => self.no_range_dictator,
        }
    }
}

pub fn evaluate(table: &RuleTable, p: Property) -> bool {
    match p {
        Property::Spo => check_spo(table),
        Property::Spp => check_spp(table),
        Property::WeakViability => check_weak_viability(&build_range_graph(table)),
        Property::Unanimity => check_unanimous(table),
        Property::Irreducible => decompose(table).is_none(),
        Property::NonMarian => find_marius(table).is_none(),
        Property::NoRangeDictator => check_range_dictator(table).is_empty(),
    }
}

fn satisfies(table: &RuleTable, required: PropertySet) -> bool {
    required.iter().all(|p| evaluate(table, p))
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Classification {
    pub range: RangeGraph,
    pub class: GraphClass,
    pub acyclic: bool,
    pub edge_connected: bool,
    pub reducible: bool,
    pub dictators: DictatorReport,
}

pub fn classify(table: &RuleTable) -> Classification {
    let range = build_range_graph(table);
    Classification {
        range,
        class: classify_graph(&range),
        acyclic: is_acyclic(&range),
        edge_connected: is_edge_connected(&range).is_none(),
        reducible: decompose(table).is_some(),
        dictators: dictator_report(table),
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RuleRecord {
    pub table: RuleTable,
    pub properties: PropertyVector,
    pub classification: Classification,
}

impl RuleRecord {
    pub fn new(table: RuleTable) -> Self {
        let properties = PropertyVector {
            spo: evaluate(&table, Property::Spo),
            spp: evaluate(&table, Property::Spp),
            weak_viability: evaluate(&table, Property::WeakViability),
            unanimity: evaluate(&table, Property::Unanimity),
            irreducible: evaluate(&table, Property::Irreducible),
            non_marian: evaluate(&table, Property::NonMarian),
            no_range_dictator: evaluate(&table, Property::NoRangeDictator),
        };
        let classification = classify(&table);
        RuleRecord { table, properties, classification }
    }
}

/// Counts over emitted records.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ClassCounts {
    pub complete: u64,
    pub complete_bipartite: u64,
    pub bipartite: u64,
    pub other: u64,
    pub acyclic: u64,
    pub edge_connected: u64,
    pub reducible: u64,
    pub marian: u64,
    pub weak_dictator: u64,
    pub strong_dictator: u64,
    pub range_dictator: u64,
    /// Bipartite range or a range dictator.
    pub bipartite_or_range_dictator: u64,
}

impl ClassCounts {
    fn add(&mut self, c: &Classification) {
        match c.class {
            GraphClass::Complete => self.complete += 1,
            GraphClass::CompleteBipartite => self.complete_bipartite += 1,
            GraphClass::Bipartite => self.bipartite += 1,
            GraphClass::Other => self.other += 1,
        }
        let d = &c.dictators;
        self.acyclic += u64::from(c.acyclic);
        self.edge_connected += u64::from(c.edge_connected);
        self.reducible += u64::from(c.reducible);
        self.marian += u64::from(d.marius.is_some());
        self.weak_dictator += u64::from(!d.weak_dictators.is_empty());
        self.strong_dictator += u64::from(!d.strong_dictators.is_empty());
        self.range_dictator += u64::from(!d.range_dictators.is_empty());
        let bip = matches!(c.class, GraphClass::CompleteBipartite | GraphClass::Bipartite);
        self.bipartite_or_range_dictator += u64::from(bip || !d.range_dictators.is_empty());
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SearchSummary {
    pub engine: Engine,
    pub spec: SearchSpec,
    /// False when the run was stopped before exhausting the space.
    pub complete: bool,
    /// Tables (naive) or search nodes (pruned) visited.
    pub visited: u64,
    pub emitted: u64,
    pub counts: ClassCounts,
}

impl SearchSummary {
    fn new(engine: Engine, spec: SearchSpec) -> Self {
        SearchSummary {
            engine,
            spec,
            complete: false,
            visited: 0,
            emitted: 0,
            counts: ClassCounts::default(),
        }
    }

    fn emit(&mut self, table: RuleTable, sink: &mut dyn FnMut(RuleRecord)) {
        let record = RuleRecord::new(table);
        self.emitted += 1;
        self.counts.add(&record.classification);
        sink(record);
    }
}

const POLL_EVERY: u64 = 4096;

/// Visits every table over the spec's profile space.
///
/// `stop` is polled periodically; returning true ends the run with `complete = false`.
pub fn enumerate_all_rules(
    spec: &SearchSpec,
    stop: &mut dyn FnMut() -> bool,
    sink: &mut dyn FnMut(RuleRecord),
) -> Result<SearchSummary> {
    let space = spec.space()?;
    let committees: Vec<Committee> = Committee::all(spec.m).collect();
    let c = committees.len();
    let required = (c as u128).checked_pow(space.len() as u32).unwrap_or(u128::MAX);
    if required > u128::from(spec.naive_budget) {
        return Err(Error::BudgetExceeded { required, budget: spec.naive_budget });
    }
    let mut summary = SearchSummary::new(Engine::Naive, *spec);
    let mut digits = alloc::vec![0usize; space.len()];
    loop {
        if summary.visited.is_multiple_of(POLL_EVERY) && stop() {
            return Ok(summary);
        }
        summary.visited += 1;
        let outcomes = digits.iter().map(|&d| committees[d]).collect();
        let table = RuleTable::new(spec.m, spec.n, outcomes)?;
        if satisfies(&table, spec.required) {
            summary.emit(table, sink);
        }
        let Some(pos) = digits.iter().rposition(|&d| d + 1 < c) else {
            break;
        };
        digits[pos] += 1;
        digits[pos + 1..].iter_mut().for_each(|d| *d = 0);
    }
    summary.complete = true;
    Ok(summary)
}

/// Pairwise constraints between outcomes at two profiles one ballot apart.
struct Constraints {
    radix: usize,
    c: usize,
    /// `allowed[(r1 * radix + r2) * c + c1]`: outcomes permitted where the
    /// deviating voter reports `r2`, given outcome `c1` where they report `r1`.
    allowed: Vec<u64>,
}

impl Constraints {
    fn new(space: &ProfileSpace, committees: &[Committee], spo: bool, spp: bool, mono: bool) -> Self {
        let radix = space.radix();
        let c = committees.len();
        let ballots = space.ballots();
        let moves = mono.then(|| move_table(ballots));
        let mut allowed = alloc::vec![0u64; radix * radix * c];
        for r1 in 0..radix {
            for r2 in 0..radix {
                for (i1, &c1) in committees.iter().enumerate() {
                    let mut mask = 0u64;
                    for (i2, &c2) in committees.iter().enumerate() {
                        let (b1, b2) = (&ballots[r1], &ballots[r2]);
                        let mut ok = true;
                        if spo {
                            ok &= !strictly_prefers(SetOrderKind::Optimistic, b1, c2, c1)
                                && !strictly_prefers(SetOrderKind::Optimistic, b2, c1, c2);
                        }
                        if spp {
                            ok &= !strictly_prefers(SetOrderKind::Pessimistic, b1, c2, c1)
                                && !strictly_prefers(SetOrderKind::Pessimistic, b2, c1, c2);
                        }
                        if let Some(moves) = &moves {
                            ok &= monotone_pair(moves, ballots, r1, r2, c1, c2)
                                && monotone_pair(moves, ballots, r2, r1, c2, c1);
                        }
                        if ok {
                            mask |= 1 << i2;
                        }
                    }
                    allowed[(r1 * radix + r2) * c + i1] = mask;
                }
            }
        }
        Constraints { radix, c, allowed }
    }

    fn mask(&self, r1: usize, r2: usize, c1: usize) -> u64 {
        self.allowed[(r1 * self.radix + r2) * self.c + c1]
    }
}

/// `moves[r1 * radix + r2]`: alternatives `s` such that ballot `r2` is ballot `r1` with `s` moved up.
fn move_table(ballots: &[Ballot]) -> Vec<u32> {
    let radix = ballots.len();
    let mut moves = alloc::vec![0u32; radix * radix];
    for (r1, b) in ballots.iter().enumerate() {
        for s in 0..b.len() as Alternative {
            for q in 0..b.position(s) {
                let raised = b.move_to(s, q).expect("position in range");
                moves[r1 * radix + raised.rank()] |= 1 << s;
            }
        }
    }
    moves
}

/// Upward moves from `r1` to `r2` and the matching downward moves back.
fn monotone_pair(moves: &[u32], ballots: &[Ballot], r1: usize, r2: usize, c1: Committee, c2: Committee) -> bool {
    let radix = ballots.len();
    let mut up = moves[r1 * radix + r2];
    let (lowered, raised) = (&ballots[r1], &ballots[r2]);
    while up != 0 {
        let s = up.trailing_zeros() as Alternative;
        up &= up - 1;
        if upward_clause_broken(lowered, raised, s, c1, c2).is_some()
            || downward_clause_broken(raised, lowered, s, c2, c1).is_some()
        {
            return false;
        }
    }
    true
}

struct Pruned<'a> {
    spec: &'a SearchSpec,
    space: ProfileSpace,
    committees: Vec<Committee>,
    cons: Constraints,
    /// Committees containing each alternative.
    member_mask: Vec<u64>,
    check_viability: bool,
    assignment: Vec<usize>,
    summary: SearchSummary,
    stopped: bool,
}

impl Pruned<'_> {
    fn viable(&self, domains: &[u64]) -> bool {
        let union = domains.iter().fold(0u64, |acc, &d| acc | d);
        self.member_mask.iter().all(|&m| union & m != 0)
    }

    fn dfs(
        &mut self,
        idx: usize,
        domains: &mut [u64],
        stop: &mut dyn FnMut() -> bool,
        sink: &mut dyn FnMut(RuleRecord),
    ) -> Result<()> {
        if self.stopped {
            return Ok(());
        }
        if self.summary.visited.is_multiple_of(POLL_EVERY) && stop() {
            self.stopped = true;
            return Ok(());
        }
        self.summary.visited += 1;
        if idx == self.space.len() {
            let outcomes = self.assignment.iter().map(|&i| self.committees[i]).collect();
            let table = RuleTable::new(self.spec.m, self.spec.n, outcomes)?;
            if satisfies(&table, self.spec.required) {
                self.summary.emit(table, sink);
            }
            return Ok(());
        }
        let mut options = domains[idx];
        while options != 0 {
            let choice = options.trailing_zeros() as usize;
            options &= options - 1;
            let mut next = domains.to_vec();
            next[idx] = 1 << choice;
            if self.propagate(idx, choice, &mut next) {
                self.assignment[idx] = choice;
                self.dfs(idx + 1, &mut next, stop, sink)?;
                if self.stopped {
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    /// Narrows later profiles one ballot away from `idx`.
    fn propagate(&self, idx: usize, choice: usize, domains: &mut [u64]) -> bool {
        for v in 0..self.space.n() {
            let own = self.space.digit(idx, v);
            for r in 0..self.space.radix() {
                if r == own {
                    continue;
                }
                let other = self.space.with_digit(idx, v, r);
                if other < idx {
                    continue;
                }
                domains[other] &= self.cons.mask(own, r, choice);
                if domains[other] == 0 {
                    return false;
                }
            }
        }
        !self.check_viability || self.viable(domains)
    }
}

/// Depth-first search with forward checking; same output as [`enumerate_all_rules`].
pub fn pruned_search(
    spec: &SearchSpec,
    stop: &mut dyn FnMut() -> bool,
    sink: &mut dyn FnMut(RuleRecord),
) -> Result<SearchSummary> {
    let space = spec.space()?;
    let committees: Vec<Committee> = Committee::all(spec.m).collect();
    let req = spec.required;
    let (spo, spp, wv) = (
        req.contains(Property::Spo),
        req.contains(Property::Spp),
        req.contains(Property::WeakViability),
    );
    let mono = spec.lemma_pruning && spo && spp;
    let unanimity = req.contains(Property::Unanimity) || (mono && wv);
    let cons = Constraints::new(&space, &committees, spo, spp, mono);
    let member_mask: Vec<u64> = (0..spec.m as Alternative)
        .map(|a| {
            committees
                .iter()
                .enumerate()
                .filter(|(_, c)| c.contains(a))
                .fold(0, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let full = (1u64 << committees.len()) - 1;
    let mut domains = alloc::vec![full; space.len()];
    if unanimity {
        for (idx, d) in domains.iter_mut().enumerate() {
            let top = space.ballot(idx, 0).top();
            if (1..space.n()).all(|v| space.ballot(idx, v).top() == top) {
                *d &= member_mask[usize::from(top)];
            }
        }
    }
    let len = space.len();
    let mut search = Pruned {
        spec,
        space,
        committees,
        cons,
        member_mask,
        check_viability: wv,
        assignment: alloc::vec![0; len],
        summary: SearchSummary::new(Engine::Pruned, *spec),
        stopped: false,
    };
    if !wv || search.viable(&domains) {
        search.dfs(0, &mut domains, stop, sink)?;
    }
    search.summary.complete = !search.stopped;
    Ok(search.summary)
}

/// Runs either engine.
pub fn run(
    engine: Engine,
    spec: &SearchSpec,
    stop: &mut dyn FnMut() -> bool,
    sink: &mut dyn FnMut(RuleRecord),
) -> Result<SearchSummary> {
    match engine {
        Engine::Naive => enumerate_all_rules(spec, stop, sink),
        Engine::Pruned => pruned_search(spec, stop, sink),
    }
}

/// Number of tables over `m` alternatives and `n` voters, saturating.
pub fn table_count(m: usize, n: usize) -> u128 {
    let c = (m * (m - 1) / 2) as u128;
    let profiles = (factorial(m) as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    u32::try_from(profiles)
        .ok()
        .and_then(|p| c.checked_pow(p))
        .unwrap_or(u128::MAX)
}
