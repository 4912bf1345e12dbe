// SPDX-License-Identifier: Apache-2.0

use alloc::string::String;

use thiserror::Error;

use crate::{Alternative, Committee};

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("at most {max} alternatives are supported, got {m}")]
    TooManyAlternatives { m: usize, max: usize },
    #[error("a rule needs at least {min} alternatives and one voter (m = {m}, n = {n})")]
    TooSmall { m: usize, n: usize, min: usize },
    #[error("ballot is not a permutation of 0..{m}")]
    InvalidBallot { m: usize },
    #[error("alternative {alternative} is out of range for {m} alternatives")]
    AlternativeOutOfRange { alternative: Alternative, m: usize },
    #[error("ballot rank {rank} is out of range for {m} alternatives")]
    RankOutOfRange { rank: usize, m: usize },
    #[error("voter {voter} is out of range for {n} voters")]
    VoterOutOfRange { voter: usize, n: usize },
    #[error("profile ballots disagree on the number of alternatives")]
    MismatchedProfile,
    #[error("a profile needs at least one ballot")]
    EmptyProfile,
    #[error("enumeration needs {required} items but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("best/worst of an empty set")]
    EmptySet,
    #[error("alternative {0} is already ranked first")]
    NoPredecessor(Alternative),
    #[error("position {pos} is out of range for {m} alternatives")]
    PositionOutOfRange { pos: usize, m: usize },
    #[error("a committee needs two distinct alternatives, got {0} twice")]
    DegenerateCommittee(Alternative),
    #[error("table has {found} outcomes, expected {expected}")]
    TableLength { expected: usize, found: usize },
    #[error("profile index {index} is out of range ({len} profiles)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("the range graph has no edges")]
    EmptyRange,
    #[error("committee {0} is not an edge of the graph")]
    EdgeNotPresent(Committee),
    #[error("graph does not satisfy edge-connectivity")]
    NotEdgeConnected,
    #[error("committee {0} is not in the domain's universe")]
    NotInUniverse(Committee),
    #[error("orders in a domain must share one universe")]
    MixedUniverse,
    #[error("a domain needs at least {min} committees in its universe")]
    UniverseTooSmall { min: usize },
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("bad parameters for rule `{rule}`: {reason}")]
    InvalidParameters { rule: String, reason: String },
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
}
