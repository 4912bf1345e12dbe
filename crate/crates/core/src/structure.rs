// SPDX-License-Identifier: Apache-2.0

//! Marius detection, decomposition into single-winner parts, favourite
//! committees and the three dictatorship notions.

use alloc::vec::Vec;

use crate::prefs::{strictly_prefers, SetOrderKind};
use crate::profile::{factorial, Alternative, Ballot, Budget, ProfileSpace, Voter};
use crate::rangegraph::{build_range_graph, is_bipartite, RangeGraph};
use crate::strategy::ScfTable;
use crate::{Committee, Error, Result, RuleTable};

/// Lowest alternative elected at every profile.
pub fn find_marius(table: &RuleTable) -> Option<Alternative> {
    let common = table
        .outcomes()
        .iter()
        .fold(u32::MAX, |acc, c| acc & c.mask());
    (common != 0).then(|| common.trailing_zeros() as Alternative)
}

/// `F(P) = {G(P|left), H(P|right)}` for every profile `P`.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Decomposition {
    pub left: Vec<Alternative>,
    pub right: Vec<Alternative>,
    pub left_rule: ScfTable,
    pub right_rule: ScfTable,
}

/// For each full ballot rank, the rank of its restriction to `part` (sorted labels).
fn restriction_ranks(space: &ProfileSpace, part: &[Alternative]) -> Vec<usize> {
    let mask = part.iter().fold(0u32, |acc, &a| acc | 1 << a);
    space
        .ballots()
        .iter()
        .map(|b| {
            let local: Vec<Alternative> = b
                .filtered(mask)
                .map(|a| part.iter().position(|&x| x == a).expect("in part") as Alternative)
                .collect();
            Ballot::new(&local).expect("restriction is a permutation").rank()
        })
        .collect()
}

/// Induced single-winner rule on `part`: complete each local ballot by
/// appending the other alternatives in index order, run `table`, keep the
/// elected member of `part`.
fn component(table: &RuleTable, part: &[Alternative], rest: &[Alternative]) -> Option<ScfTable> {
    let k = part.len();
    let n = table.n();
    let local = ProfileSpace::new(k, n, Budget(u64::MAX)).ok()?;
    let full_radix = factorial(table.m());
    let mut outcomes = Vec::with_capacity(local.len());
    for idx in 0..local.len() {
        let mut full_index = 0;
        for v in 0..n {
            let order: Vec<Alternative> = local
                .ballot(idx, v)
                .order()
                .iter()
                .map(|&i| part[usize::from(i)])
                .chain(rest.iter().copied())
                .collect();
            let rank = Ballot::new(&order).expect("completion is a permutation").rank();
            full_index = full_index * full_radix + rank;
        }
        let elected = table.outcome(full_index);
        let mut inside = elected.members().into_iter().filter(|a| part.contains(a));
        let pick = inside.next()?;
        if inside.next().is_some() {
            return None;
        }
        outcomes.push(part.iter().position(|&x| x == pick)? as Alternative);
    }
    ScfTable::new(k, n, part.to_vec(), outcomes).ok()
}

/// Decomposes along the canonical bipartition of the range graph, then
/// verifies the decomposition on every profile.
///
/// Returns `None` when the range is not bipartite or the verification fails.
pub fn decompose(table: &RuleTable) -> Option<Decomposition> {
    let parts = is_bipartite(&build_range_graph(table))?;
    if parts.left.is_empty() || parts.right.is_empty() {
        return None;
    }
    let left_rule = component(table, &parts.left, &parts.right)?;
    let right_rule = component(table, &parts.right, &parts.left)?;

    let space = table.space();
    let left_ranks = restriction_ranks(&space, &parts.left);
    let right_ranks = restriction_ranks(&space, &parts.right);
    let (lr, rr) = (factorial(parts.left.len()), factorial(parts.right.len()));
    for idx in 0..space.len() {
        let (mut li, mut ri) = (0, 0);
        for v in 0..space.n() {
            let d = space.digit(idx, v);
            li = li * lr + left_ranks[d];
            ri = ri * rr + right_ranks[d];
        }
        let g = parts.left[usize::from(left_rule.outcomes()[li])];
        let h = parts.right[usize::from(right_rule.outcomes()[ri])];
        if Committee::new(g, h) != Ok(table.outcome(idx)) {
            return None;
        }
    }
    Some(Decomposition {
        left: parts.left,
        right: parts.right,
        left_rule,
        right_rule,
    })
}

/// The lexicographically best edge of `g` for ballot `b`.
pub fn favourite_committee(b: &Ballot, g: &RangeGraph) -> Result<Committee> {
    let mut edges = g.edges();
    let first = edges.next().ok_or(Error::EmptyRange)?;
    Ok(edges.fold(first, |best, e| {
        if strictly_prefers(SetOrderKind::Lexicographic, b, e, best) {
            e
        } else {
            best
        }
    }))
}

fn is_bimaximal(b: &Ballot, edges: &[Committee], e: Committee) -> bool {
    edges.iter().all(|&f| {
        !strictly_prefers(SetOrderKind::Optimistic, b, f, e)
            && !strictly_prefers(SetOrderKind::Pessimistic, b, f, e)
    })
}

/// The favourite committee is maximal under both the optimistic and the
/// pessimistic order, and no other edge is.
///
/// Only guaranteed for edge-connected graphs with at least one edge.
pub fn check_favourite_is_bimaximal(b: &Ballot, g: &RangeGraph) -> bool {
    let Ok(fav) = favourite_committee(b, g) else {
        return false;
    };
    let edges: Vec<Committee> = g.edges().collect();
    is_bimaximal(b, &edges, fav)
        && edges
            .iter()
            .all(|&e| e == fav || !is_bimaximal(b, &edges, e))
}

/// Favourite committee per ballot rank.
fn favourites(space: &ProfileSpace, g: &RangeGraph) -> Vec<Committee> {
    space
        .ballots()
        .iter()
        .map(|b| favourite_committee(b, g).expect("range graphs of tables have edges"))
        .collect()
}

fn voters_where(table: &RuleTable, mut holds: impl FnMut(&ProfileSpace, usize, Voter) -> bool) -> Vec<Voter> {
    let space = table.space();
    (0..space.n())
        .filter(|&v| (0..space.len()).all(|idx| holds(&space, idx, v)))
        .collect()
}

/// Voters whose top choice is always elected.
pub fn check_weak_dictator(table: &RuleTable) -> Vec<Voter> {
    voters_where(table, |s, idx, v| table.outcome(idx).contains(s.ballot(idx, v).top()))
}

/// Voters whose top two choices are always the committee.
pub fn check_strong_dictator(table: &RuleTable) -> Vec<Voter> {
    voters_where(table, |s, idx, v| {
        let b = s.ballot(idx, v);
        Committee::new(b.at(0), b.at(1)) == Ok(table.outcome(idx))
    })
}

/// Voters whose favourite committee in the rule's own range is always elected.
pub fn check_range_dictator(table: &RuleTable) -> Vec<Voter> {
    let space = table.space();
    let fav = favourites(&space, &build_range_graph(table));
    (0..space.n())
        .filter(|&v| (0..space.len()).all(|idx| table.outcome(idx) == fav[space.digit(idx, v)]))
        .collect()
}

/// Whenever all voters share a favourite committee, it is elected.
pub fn check_committee_unanimity(table: &RuleTable) -> bool {
    let space = table.space();
    let fav = favourites(&space, &build_range_graph(table));
    (0..space.len()).all(|idx| {
        let first = fav[space.digit(idx, 0)];
        let shared = (1..space.n()).all(|v| fav[space.digit(idx, v)] == first);
        !shared || table.outcome(idx) == first
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DictatorReport {
    pub weak_dictators: Vec<Voter>,
    pub strong_dictators: Vec<Voter>,
    pub range_dictators: Vec<Voter>,
    pub marius: Option<Alternative>,
}

pub fn dictator_report(table: &RuleTable) -> DictatorReport {
    DictatorReport {
        weak_dictators: check_weak_dictator(table),
        strong_dictators: check_strong_dictator(table),
        range_dictators: check_range_dictator(table),
        marius: find_marius(table),
    }
}
