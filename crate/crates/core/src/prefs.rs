// SPDX-License-Identifier: Apache-2.0

//! Extensions of a ballot to comparisons between committees, and ballot surgery.

use crate::profile::{Alternative, Ballot, Profile, Voter};
use crate::{Committee, Error, Result};

/// How a voter compares two committees given a ballot over alternatives.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "kebab-case"))]
pub enum SetOrderKind {
    /// By best member.
    Optimistic,
    /// By worst member.
    Pessimistic,
    /// Strictly better if better optimistically or pessimistically. Not transitive.
    DugganSchwartz,
    /// By best member, ties broken by worst member. A strict total order on committees.
    Lexicographic,
}

impl SetOrderKind {
    pub const ALL: [SetOrderKind; 4] = [
        SetOrderKind::Optimistic,
        SetOrderKind::Pessimistic,
        SetOrderKind::DugganSchwartz,
        SetOrderKind::Lexicographic,
    ];
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SetComparison {
    LeftBetter,
    RightBetter,
    Equivalent,
    /// Each side is strictly better than the other (only under Duggan–Schwartz).
    Incomparable,
}

pub fn best(b: &Ballot, set: &[Alternative]) -> Result<Alternative> {
    set.iter()
        .copied()
        .min_by_key(|&a| b.position(a))
        .ok_or(Error::EmptySet)
}

pub fn worst(b: &Ballot, set: &[Alternative]) -> Result<Alternative> {
    set.iter()
        .copied()
        .max_by_key(|&a| b.position(a))
        .ok_or(Error::EmptySet)
}

/// `x` strictly above `y` under `kind`.
#[inline]
pub fn strictly_prefers(kind: SetOrderKind, b: &Ballot, x: Committee, y: Committee) -> bool {
    let opt = || b.prefers(x.best(b), y.best(b));
    let pes = || b.prefers(x.worst(b), y.worst(b));
    match kind {
        SetOrderKind::Optimistic => opt(),
        SetOrderKind::Pessimistic => pes(),
        SetOrderKind::DugganSchwartz => opt() || pes(),
        SetOrderKind::Lexicographic => {
            let (xb, yb) = (x.best(b), y.best(b));
            if xb != yb {
                b.prefers(xb, yb)
            } else {
                pes()
            }
        }
    }
}

pub fn cmp_set(kind: SetOrderKind, b: &Ballot, x: Committee, y: Committee) -> SetComparison {
    match (strictly_prefers(kind, b, x, y), strictly_prefers(kind, b, y, x)) {
        (true, false) => SetComparison::LeftBetter,
        (false, true) => SetComparison::RightBetter,
        (false, false) => SetComparison::Equivalent,
        (true, true) => SetComparison::Incomparable,
    }
}

/// `p` with `s` exchanged with its immediate predecessor on voter `voter`'s ballot.
pub fn swap_up(p: &Profile, voter: Voter, s: Alternative) -> Result<Profile> {
    let ballot = ballot_of(p, voter)?.swap_up(s)?;
    p.with_ballot(voter, ballot)
}

/// `p` with `s` moved to position `pos` on voter `voter`'s ballot.
pub fn move_to(p: &Profile, voter: Voter, s: Alternative, pos: usize) -> Result<Profile> {
    let ballot = ballot_of(p, voter)?.move_to(s, pos)?;
    p.with_ballot(voter, ballot)
}

fn ballot_of(p: &Profile, voter: Voter) -> Result<&Ballot> {
    p.ballots().get(voter).ok_or(Error::VoterOutOfRange { voter, n: p.n() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::factorial;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn c(s: &str) -> Committee {
        Committee::from_letters(s).unwrap()
    }

    fn ballot(s: &str) -> Ballot {
        *Profile::from_letters(&[s]).unwrap().ballot(0)
    }

    #[test]
    fn best_and_worst() {
        assert_eq!(best(&ballot("abcd"), &[2, 3]), Ok(2));
        assert_eq!(best(&ballot("adbc"), &[1, 2]), Ok(1));
        assert_eq!(best(&ballot("abc"), &[0]), Ok(0));
        assert_eq!(worst(&ballot("abcd"), &[2, 3]), Ok(3));
        assert_eq!(worst(&ballot("adbc"), &[0, 3]), Ok(3));
        assert_eq!(worst(&ballot("abcdef"), &[0, 4]), Ok(4));
        assert_eq!(best(&ballot("abc"), &[]), Err(Error::EmptySet));
        assert_eq!(worst(&ballot("abc"), &[]), Err(Error::EmptySet));
    }

    #[test]
    fn set_comparisons_from_the_intransitivity_witness() {
        let b = ballot("abcdef");
        assert_eq!(
            cmp_set(SetOrderKind::Pessimistic, &b, c("ae"), c("cd")),
            SetComparison::RightBetter
        );
        assert_eq!(
            cmp_set(SetOrderKind::Optimistic, &b, c("cd"), c("bf")),
            SetComparison::RightBetter
        );
        // {c,d} ≻DS {a,e} and {b,f} ≻DS {c,d}, yet {a,e} beats {b,f} on both counts.
        assert!(strictly_prefers(SetOrderKind::DugganSchwartz, &b, c("cd"), c("ae")));
        assert!(strictly_prefers(SetOrderKind::DugganSchwartz, &b, c("bf"), c("cd")));
        assert!(!strictly_prefers(SetOrderKind::DugganSchwartz, &b, c("bf"), c("ae")));
        assert_eq!(
            cmp_set(SetOrderKind::Optimistic, &b, c("ae"), c("bf")),
            SetComparison::LeftBetter
        );
        assert_eq!(
            cmp_set(SetOrderKind::Pessimistic, &b, c("ae"), c("bf")),
            SetComparison::LeftBetter
        );
        assert_eq!(
            cmp_set(SetOrderKind::DugganSchwartz, &b, c("ae"), c("bf")),
            SetComparison::LeftBetter
        );
    }

    #[test]
    fn reflexive_comparisons_are_equivalent() {
        let b = ballot("cabd");
        for kind in SetOrderKind::ALL {
            for x in Committee::all(4) {
                assert_eq!(cmp_set(kind, &b, x, x), SetComparison::Equivalent);
            }
        }
    }

    #[test]
    fn conflicted_duggan_schwartz_pair() {
        // {a,d} wins optimistically, {b,c} pessimistically.
        let b = ballot("abcd");
        assert_eq!(
            cmp_set(SetOrderKind::DugganSchwartz, &b, c("ad"), c("bc")),
            SetComparison::Incomparable
        );
    }

    #[test]
    fn lexicographic_implies_optimistic_or_pessimistic() {
        for m in 2..=6 {
            for r in 0..factorial(m) {
                let b = Ballot::from_rank(m, r).unwrap();
                for x in Committee::all(m) {
                    for y in Committee::all(m) {
                        if strictly_prefers(SetOrderKind::Lexicographic, &b, x, y) {
                            assert!(
                                strictly_prefers(SetOrderKind::Optimistic, &b, x, y)
                                    || strictly_prefers(SetOrderKind::Pessimistic, &b, x, y)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn profile_editing() {
        let p = Profile::from_letters(&["abc", "adbc"]).ok();
        assert!(p.is_none(), "mixed m rejected");
        let p = Profile::from_letters(&["abc", "bca"]).unwrap();
        let q = swap_up(&p, 0, 2).unwrap();
        assert_eq!(q, Profile::from_letters(&["acb", "bca"]).unwrap());
        let back = move_to(&q, 0, 2, 2).unwrap();
        assert_eq!(back, p);
        assert!(swap_up(&p, 1, 1).is_err());
        assert!(swap_up(&p, 2, 1).is_err());
        let p = Profile::from_letters(&["abcd"]).unwrap();
        assert_eq!(move_to(&p, 0, 3, 0).unwrap(), Profile::from_letters(&["dabc"]).unwrap());
        assert_eq!(move_to(&p, 0, 0, 3).unwrap(), Profile::from_letters(&["bcda"]).unwrap());
        assert_eq!(move_to(&p, 0, 1, 1).unwrap(), p);
    }

    fn ballot_strategy() -> impl Strategy<Value = Ballot> {
        (2usize..=7).prop_flat_map(|m| {
            (0..factorial(m)).prop_map(move |r| Ballot::from_rank(m, r).unwrap())
        })
    }

    proptest! {
        #[test]
        fn lexicographic_is_a_strict_total_order(b in ballot_strategy()) {
            let all: Vec<_> = Committee::all(b.len()).collect();
            for &x in &all {
                for &y in &all {
                    let xy = strictly_prefers(SetOrderKind::Lexicographic, &b, x, y);
                    let yx = strictly_prefers(SetOrderKind::Lexicographic, &b, y, x);
                    prop_assert!(!(xy && yx));
                    prop_assert_eq!(x == y, !xy && !yx);
                    for &z in &all {
                        if xy && strictly_prefers(SetOrderKind::Lexicographic, &b, y, z) {
                            prop_assert!(strictly_prefers(SetOrderKind::Lexicographic, &b, x, z));
                        }
                    }
                }
            }
        }

        #[test]
        fn optimistic_and_pessimistic_strict_parts_are_transitive(b in ballot_strategy()) {
            let all: Vec<_> = Committee::all(b.len()).collect();
            for kind in [SetOrderKind::Optimistic, SetOrderKind::Pessimistic] {
                for &x in &all {
                    for &y in &all {
                        if !strictly_prefers(kind, &b, x, y) { continue; }
                        prop_assert!(!strictly_prefers(kind, &b, y, x));
                        for &z in &all {
                            if strictly_prefers(kind, &b, y, z) {
                                prop_assert!(strictly_prefers(kind, &b, x, z));
                            }
                        }
                    }
                }
            }
        }
    }
}
