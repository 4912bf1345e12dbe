// SPDX-License-Identifier: Apache-2.0

//! Analysis of consular (two-seat committee) election rules.
//!
//! A rule maps every profile of strict ballots over `m` alternatives to an
//! unordered pair of distinct alternatives. This crate checks such rules for
//! strategy-proofness against optimistic and pessimistic manipulators,
//! verifies the monotonicity consequences of those properties, studies the
//! rule's range as a graph, classifies rules by their dictatorship structure,
//! decides linkedness of the induced committee-preference domain, and
//! enumerates whole rule spaces under property constraints.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and the
//! command-line driver live in the `consul` crate.
//!
//! ```
//! use consul_core::{rules, strategy, rangegraph, Budget, Rule};
//!
//! let table = rules::apple_orange().tabulate(Budget::default()).unwrap();
//! assert!(strategy::check_spo(&table) && strategy::check_spp(&table));
//! let g = rangegraph::build_range_graph(&table);
//! assert!(!rangegraph::is_onto(&g));
//! ```
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod committee;
pub mod error;
pub mod linked;
pub mod prefs;
pub mod profile;
pub mod rangegraph;
pub mod rule;
pub mod rules;
pub mod search;
pub mod strategy;
pub mod structure;

pub use committee::Committee;
pub use error::{Error, Result};
pub use profile::{
    alternative_name, ballot_rank, enumerate_profiles, factorial, profile_index, Alternative,
    Ballot, Budget, Profile, ProfileSpace, Voter, MAX_ALTERNATIVES,
};
pub use rule::{tabulate, Rule, RuleTable};
