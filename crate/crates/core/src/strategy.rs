// SPDX-License-Identifier: Apache-2.0

//! Manipulation search and monotonicity verification.
//!
//! Every scan walks profiles in index order, voters in ascending order, and
//! misreports (or moves) in a fixed order, so the returned witness is the
//! canonical first one.

use alloc::vec::Vec;

use crate::prefs::{strictly_prefers, SetOrderKind};
use crate::profile::{factorial, Alternative, Ballot, Budget, Profile, ProfileSpace, Voter};
use crate::{Committee, Error, Result, RuleTable};

/// A profitable misreport.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Manipulation {
    pub profile: Profile,
    pub voter: Voter,
    pub misreport: Ballot,
    pub sincere_outcome: Committee,
    pub manipulated_outcome: Committee,
    pub kind: SetOrderKind,
}

/// Which monotonicity clause a transition broke.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "kebab-case"))]
pub enum MonotonicityClause {
    /// A committee member moved up and the committee changed.
    UpwardMember,
    /// A non-member moved up and the committee changed other than by the
    /// mover replacing a member it overtook.
    UpwardNonMember,
    /// A non-member moved down and the committee changed.
    DownwardNonMember,
    /// A member moved down and the committee changed other than by an
    /// alternative it dropped below replacing it.
    DownwardMember,
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MonotonicityViolation {
    pub profile: Profile,
    pub voter: Voter,
    pub moved: Alternative,
    pub edited: Ballot,
    pub before: Committee,
    pub after: Committee,
    pub clause: MonotonicityClause,
}

pub fn find_manipulation(table: &RuleTable, kind: SetOrderKind) -> Option<Manipulation> {
    let space = table.space();
    for idx in 0..space.len() {
        let sincere = table.outcome(idx);
        for voter in 0..space.n() {
            let own = space.digit(idx, voter);
            let ballot = &space.ballots()[own];
            for rank in (0..space.radix()).filter(|&r| r != own) {
                let deviated = table.outcome(space.with_digit(idx, voter, rank));
                if strictly_prefers(kind, ballot, deviated, sincere) {
                    return Some(Manipulation {
                        profile: space.profile(idx),
                        voter,
                        misreport: space.ballots()[rank],
                        sincere_outcome: sincere,
                        manipulated_outcome: deviated,
                        kind,
                    });
                }
            }
        }
    }
    None
}

/// Strategy-proof for optimists.
pub fn check_spo(table: &RuleTable) -> bool {
    find_manipulation(table, SetOrderKind::Optimistic).is_none()
}

/// Strategy-proof for pessimists.
pub fn check_spp(table: &RuleTable) -> bool {
    find_manipulation(table, SetOrderKind::Pessimistic).is_none()
}

/// Strategy-proof for voters comparing committees lexicographically.
pub fn check_lex_sp(table: &RuleTable) -> bool {
    find_manipulation(table, SetOrderKind::Lexicographic).is_none()
}

/// Checks one upward move: `raised` is `lowered` with `s` moved up.
///
/// A member moving up never changes the committee. A non-member moving up
/// either changes nothing or takes the seat of a member it overtook.
pub(crate) fn upward_clause_broken(
    lowered: &Ballot,
    raised: &Ballot,
    s: Alternative,
    before: Committee,
    after: Committee,
) -> Option<MonotonicityClause> {
    if before == after {
        return None;
    }
    if before.contains(s) {
        return Some(MonotonicityClause::UpwardMember);
    }
    let replaced_ok = before.members().iter().any(|&kept| {
        let replaced = before.other(kept).expect("kept is a member");
        Committee::new(s, kept) == Ok(after)
            && lowered.prefers(replaced, s)
            && raised.prefers(s, replaced)
    });
    if replaced_ok {
        None
    } else {
        Some(MonotonicityClause::UpwardNonMember)
    }
}

/// Checks one downward move: `lowered` is `raised` with `s` moved down.
pub(crate) fn downward_clause_broken(
    raised: &Ballot,
    lowered: &Ballot,
    s: Alternative,
    before: Committee,
    after: Committee,
) -> Option<MonotonicityClause> {
    if before == after {
        return None;
    }
    let Some(kept) = before.other(s) else {
        return Some(MonotonicityClause::DownwardNonMember);
    };
    let ok = after.other(kept).is_some_and(|c| {
        c != s && raised.prefers(s, c) && lowered.prefers(c, s)
    });
    if ok {
        None
    } else {
        Some(MonotonicityClause::DownwardMember)
    }
}

#[derive(Clone, Copy)]
enum Direction {
    Up,
    Down,
}

fn verify_monotonicity(table: &RuleTable, dir: Direction) -> Option<MonotonicityViolation> {
    let space = table.space();
    let m = space.m();
    for idx in 0..space.len() {
        let before = table.outcome(idx);
        for voter in 0..space.n() {
            let ballot = *space.ballot(idx, voter);
            for s in 0..m as Alternative {
                let p = ballot.position(s);
                let targets: Vec<usize> = match dir {
                    Direction::Up => (0..p).collect(),
                    Direction::Down => (p + 1..m).collect(),
                };
                for q in targets {
                    let edited = ballot.move_to(s, q).expect("position in range");
                    let after = table.outcome(space.with_digit(idx, voter, edited.rank()));
                    let broken = match dir {
                        Direction::Up => upward_clause_broken(&ballot, &edited, s, before, after),
                        Direction::Down => downward_clause_broken(&ballot, &edited, s, before, after),
                    };
                    if let Some(clause) = broken {
                        return Some(MonotonicityViolation {
                            profile: space.profile(idx),
                            voter,
                            moved: s,
                            edited,
                            before,
                            after,
                            clause,
                        });
                    }
                }
            }
        }
    }
    None
}

/// Scans every upward move of every alternative on every ballot.
pub fn verify_upward_monotonicity(table: &RuleTable) -> Option<MonotonicityViolation> {
    verify_monotonicity(table, Direction::Up)
}

/// Scans every downward move of every alternative on every ballot.
pub fn verify_downward_monotonicity(table: &RuleTable) -> Option<MonotonicityViolation> {
    verify_monotonicity(table, Direction::Down)
}

fn common_position(space: &ProfileSpace, idx: usize, pos: usize) -> Option<Alternative> {
    let a = space.ballot(idx, 0).at(pos);
    (1..space.n())
        .all(|v| space.ballot(idx, v).at(pos) == a)
        .then_some(a)
}

/// Whenever every voter ranks the same alternative first, it is elected.
pub fn check_unanimous(table: &RuleTable) -> bool {
    let space = table.space();
    (0..space.len()).all(|idx| match common_position(&space, idx, 0) {
        Some(a) => table.outcome(idx).contains(a),
        None => true,
    })
}

/// Whenever every voter ranks the same alternative last, it is not elected.
pub fn check_veto(table: &RuleTable) -> bool {
    let space = table.space();
    let last = space.m() - 1;
    (0..space.len()).all(|idx| match common_position(&space, idx, last) {
        Some(a) => !table.outcome(idx).contains(a),
        None => true,
    })
}

/// A single-winner rule over `k` alternatives given by its table.
///
/// Outcomes are local indices `0..k`; `labels` maps them back to the
/// alternatives of an enclosing rule (identity when standalone).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ScfTable {
    k: usize,
    n: usize,
    labels: Vec<Alternative>,
    outcomes: Vec<Alternative>,
}

impl ScfTable {
    pub fn new(k: usize, n: usize, labels: Vec<Alternative>, outcomes: Vec<Alternative>) -> Result<Self> {
        if k < 1 || n < 1 {
            return Err(Error::TooSmall { m: k, n, min: 1 });
        }
        let expected = (factorial(k) as u128).checked_pow(n as u32);
        if expected != Some(outcomes.len() as u128) {
            return Err(Error::TableLength {
                expected: expected.map_or(usize::MAX, |e| e as usize),
                found: outcomes.len(),
            });
        }
        if labels.len() != k {
            return Err(Error::InvalidBallot { m: k });
        }
        if let Some(&bad) = outcomes.iter().find(|&&a| usize::from(a) >= k) {
            return Err(Error::AlternativeOutOfRange { alternative: bad, m: k });
        }
        Ok(ScfTable { k, n, labels, outcomes })
    }

    /// Tabulates `f` over all profiles on `k` alternatives.
    pub fn from_fn(
        k: usize,
        n: usize,
        budget: Budget,
        mut f: impl FnMut(&Profile) -> Alternative,
    ) -> Result<Self> {
        let space = ProfileSpace::new(k, n, budget)?;
        let outcomes = space.iter().map(|p| f(&p)).collect();
        ScfTable::new(k, n, (0..k as Alternative).collect(), outcomes)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[Alternative] {
        &self.labels
    }

    pub fn outcomes(&self) -> &[Alternative] {
        &self.outcomes
    }

    /// Local-index outcome at a local profile.
    pub fn elect(&self, profile: &Profile) -> Alternative {
        self.outcomes[profile.index()]
    }

    pub fn space(&self) -> ProfileSpace {
        ProfileSpace::new(self.k, self.n, Budget(u64::MAX)).expect("table dimensions were validated")
    }
}

/// Classical strategy-proofness: no voter ever gets a strictly better winner by misreporting.
pub fn check_scf_strategyproof(g: &ScfTable) -> bool {
    let space = g.space();
    (0..space.len()).all(|idx| {
        let sincere = g.outcomes[idx];
        (0..space.n()).all(|voter| {
            let ballot = space.ballot(idx, voter);
            (0..space.radix()).all(|rank| {
                let deviated = g.outcomes[space.with_digit(idx, voter, rank)];
                !ballot.prefers(deviated, sincere)
            })
        })
    })
}
