// SPDX-License-Identifier: Apache-2.0

//! Ballots, profiles and their canonical indexing.
//!
//! A ballot over `m` alternatives is ranked by the lexicographic position of
//! its permutation among all `m!` permutations (its Lehmer code). A profile of
//! `n` ballots is indexed in mixed radix `m!` with voter 0 as the most
//! significant digit. Rule tables, search output and the rule-table file
//! format all follow this order.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Index of an alternative, `0..m`.
pub type Alternative = u8;

/// Index of a voter, `0..n`.
pub type Voter = usize;

/// Upper bound on `m`. `10!` profiles per voter is already far past desk scale.
pub const MAX_ALTERNATIVES: usize = 10;

/// Default display name: `a`, `b`, `c`, ... then `x26`, `x27`, ...
pub fn alternative_name(a: Alternative) -> String {
    if a < 26 {
        String::from(char::from(b'a' + a))
    } else {
        alloc::format!("x{a}")
    }
}

pub fn factorial(m: usize) -> usize {
    (1..=m).product()
}

/// Cap on the number of profiles (or rule tables) an operation may enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT_PROFILES: u64 = 100_000_000;

    pub fn check(self, required: u128) -> Result<()> {
        if required > u128::from(self.0) {
            Err(Error::BudgetExceeded {
                required,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget(Self::DEFAULT_PROFILES)
    }
}

/// A strict linear order over `m` alternatives, most preferred first.
///
/// Stores the inverse permutation alongside the order so position lookups
/// are constant time.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ballot {
    len: u8,
    order: [Alternative; MAX_ALTERNATIVES],
    pos: [u8; MAX_ALTERNATIVES],
}

impl Ballot {
    pub fn new(order: &[Alternative]) -> Result<Self> {
        let m = order.len();
        if m > MAX_ALTERNATIVES {
            return Err(Error::TooManyAlternatives {
                m,
                max: MAX_ALTERNATIVES,
            });
        }
        let mut seen = [false; MAX_ALTERNATIVES];
        let mut ballot = Ballot {
            len: m as u8,
            order: [0; MAX_ALTERNATIVES],
            pos: [0; MAX_ALTERNATIVES],
        };
        for (i, &a) in order.iter().enumerate() {
            let ai = usize::from(a);
            if ai >= m || seen[ai] {
                return Err(Error::InvalidBallot { m });
            }
            seen[ai] = true;
            ballot.order[i] = a;
            ballot.pos[ai] = i as u8;
        }
        Ok(ballot)
    }

    /// The ballot `0 ≻ 1 ≻ ... ≻ m-1`.
    pub fn identity(m: usize) -> Result<Self> {
        let order: Vec<Alternative> = (0..m as u8).collect();
        Ballot::new(&order)
    }

    /// Inverse of [`Ballot::rank`].
    pub fn from_rank(m: usize, rank: usize) -> Result<Self> {
        if m > MAX_ALTERNATIVES {
            return Err(Error::TooManyAlternatives {
                m,
                max: MAX_ALTERNATIVES,
            });
        }
        if rank >= factorial(m) {
            return Err(Error::RankOutOfRange { rank, m });
        }
        let mut pool: Vec<Alternative> = (0..m as u8).collect();
        let mut order = Vec::with_capacity(m);
        let mut rest = rank;
        for i in 0..m {
            let f = factorial(m - 1 - i);
            let digit = rest / f;
            rest %= f;
            order.push(pool.remove(digit));
        }
        Ballot::new(&order)
    }

    pub fn len(&self) -> usize {
        usize::from(self.len)
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn order(&self) -> &[Alternative] {
        &self.order[..self.len()]
    }

    /// 0-based position of `a` (0 = most preferred).
    #[inline]
    pub fn position(&self, a: Alternative) -> usize {
        usize::from(self.pos[usize::from(a)])
    }

    #[inline]
    pub fn at(&self, pos: usize) -> Alternative {
        self.order[pos]
    }

    pub fn top(&self) -> Alternative {
        self.order[0]
    }

    pub fn bottom(&self) -> Alternative {
        self.order[self.len() - 1]
    }

    /// Strictly prefers `x` to `y`.
    #[inline]
    pub fn prefers(&self, x: Alternative, y: Alternative) -> bool {
        self.pos[usize::from(x)] < self.pos[usize::from(y)]
    }

    /// Lexicographic rank among all `m!` permutations.
    pub fn rank(&self) -> usize {
        let m = self.len();
        let mut rank = 0;
        for i in 0..m {
            let smaller_later = self.order[i + 1..m]
                .iter()
                .filter(|&&x| x < self.order[i])
                .count();
            rank += smaller_later * factorial(m - 1 - i);
        }
        rank
    }

    fn check_alternative(&self, a: Alternative) -> Result<()> {
        if usize::from(a) >= self.len() {
            Err(Error::AlternativeOutOfRange {
                alternative: a,
                m: self.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Removes `s` and reinserts it at `pos`, keeping everyone else's relative order.
    pub fn move_to(&self, s: Alternative, pos: usize) -> Result<Ballot> {
        self.check_alternative(s)?;
        let m = self.len();
        if pos >= m {
            return Err(Error::PositionOutOfRange { pos, m });
        }
        let mut order: Vec<Alternative> = self.order().iter().copied().filter(|&x| x != s).collect();
        order.insert(pos, s);
        Ballot::new(&order)
    }

    /// Exchanges `s` with the alternative directly above it.
    pub fn swap_up(&self, s: Alternative) -> Result<Ballot> {
        self.check_alternative(s)?;
        let p = self.position(s);
        if p == 0 {
            return Err(Error::NoPredecessor(s));
        }
        self.move_to(s, p - 1)
    }

    /// Order restricted to the alternatives in `subset` (as a bitmask).
    pub(crate) fn filtered(&self, subset: u32) -> impl Iterator<Item = Alternative> + '_ {
        self.order()
            .iter()
            .copied()
            .filter(move |&a| subset & (1 << a) != 0)
    }
}

impl fmt::Debug for Ballot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ballot(")?;
        for &a in self.order() {
            write!(f, "{}", alternative_name(a))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Ballot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &a) in self.order().iter().enumerate() {
            if i > 0 {
                f.write_str(">")?;
            }
            f.write_str(&alternative_name(a))?;
        }
        Ok(())
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Ballot {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.order())
    }
}

pub fn ballot_rank(b: &Ballot) -> usize {
    b.rank()
}

/// One ballot per voter, voter 0 first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(transparent))]
pub struct Profile {
    ballots: Vec<Ballot>,
}

impl Profile {
    pub fn new(ballots: Vec<Ballot>) -> Result<Self> {
        let first = ballots.first().ok_or(Error::EmptyProfile)?;
        if ballots.iter().any(|b| b.len() != first.len()) {
            return Err(Error::MismatchedProfile);
        }
        Ok(Profile { ballots })
    }

    /// Shorthand for tests and fixtures: each ballot as a string of letters, e.g. `["adbc"]`.
    pub fn from_letters(ballots: &[&str]) -> Result<Self> {
        let parsed = ballots
            .iter()
            .map(|s| {
                let order: Vec<Alternative> = s.bytes().map(|c| c.wrapping_sub(b'a')).collect();
                Ballot::new(&order)
            })
            .collect::<Result<Vec<_>>>()?;
        Profile::new(parsed)
    }

    pub fn m(&self) -> usize {
        self.ballots[0].len()
    }

    pub fn n(&self) -> usize {
        self.ballots.len()
    }

    pub fn ballot(&self, voter: Voter) -> &Ballot {
        &self.ballots[voter]
    }

    pub fn ballots(&self) -> &[Ballot] {
        &self.ballots
    }

    pub fn with_ballot(&self, voter: Voter, ballot: Ballot) -> Result<Profile> {
        if voter >= self.n() {
            return Err(Error::VoterOutOfRange {
                voter,
                n: self.n(),
            });
        }
        if ballot.len() != self.m() {
            return Err(Error::MismatchedProfile);
        }
        let mut ballots = self.ballots.clone();
        ballots[voter] = ballot;
        Ok(Profile { ballots })
    }

    pub fn index(&self) -> usize {
        let radix = factorial(self.m());
        self.ballots.iter().fold(0, |acc, b| acc * radix + b.rank())
    }
}

pub fn profile_index(p: &Profile) -> usize {
    p.index()
}

/// All profiles for fixed `m` and `n`, with every ballot pre-materialized by rank.
#[derive(Clone, Debug)]
pub struct ProfileSpace {
    m: usize,
    n: usize,
    radix: usize,
    len: usize,
    ballots: Vec<Ballot>,
}

impl ProfileSpace {
    pub fn new(m: usize, n: usize, budget: Budget) -> Result<Self> {
        if m > MAX_ALTERNATIVES {
            return Err(Error::TooManyAlternatives {
                m,
                max: MAX_ALTERNATIVES,
            });
        }
        if m < 1 || n < 1 {
            return Err(Error::TooSmall { m, n, min: 1 });
        }
        let radix = factorial(m);
        let required = (radix as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        budget.check(required)?;
        let ballots = (0..radix)
            .map(|r| Ballot::from_rank(m, r))
            .collect::<Result<Vec<_>>>()?;
        Ok(ProfileSpace {
            m,
            n,
            radix,
            len: required as usize,
            ballots,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `m!`
    pub fn radix(&self) -> usize {
        self.radix
    }

    /// `(m!)^n`
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// All `m!` ballots in rank order.
    pub fn ballots(&self) -> &[Ballot] {
        &self.ballots
    }

    #[inline]
    pub fn digit(&self, index: usize, voter: Voter) -> usize {
        let shift = self.n - 1 - voter;
        (index / self.radix.pow(shift as u32)) % self.radix
    }

    #[inline]
    pub fn ballot(&self, index: usize, voter: Voter) -> &Ballot {
        &self.ballots[self.digit(index, voter)]
    }

    /// Profile index with voter's ballot replaced by the ballot of rank `rank`.
    #[inline]
    pub fn with_digit(&self, index: usize, voter: Voter, rank: usize) -> usize {
        let weight = self.radix.pow((self.n - 1 - voter) as u32);
        let old = (index / weight) % self.radix;
        index - old * weight + rank * weight
    }

    pub fn digits(&self, index: usize) -> Vec<usize> {
        (0..self.n).map(|v| self.digit(index, v)).collect()
    }

    pub fn profile(&self, index: usize) -> Profile {
        Profile {
            ballots: (0..self.n).map(|v| *self.ballot(index, v)).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Profile> + '_ {
        (0..self.len).map(move |i| self.profile(i))
    }
}

/// Every profile exactly once, in increasing index order.
pub fn enumerate_profiles(m: usize, n: usize, budget: Budget) -> Result<impl Iterator<Item = Profile>> {
    let space = ProfileSpace::new(m, n, budget)?;
    Ok((0..space.len()).map(move |i| space.profile(i)))
}
