// SPDX-License-Identifier: Apache-2.0

//! The rule abstraction and explicit rule tables.

use alloc::vec::Vec;

use crate::profile::{factorial, Budget, Profile, ProfileSpace};
use crate::{Committee, Error, Result};

/// A consular election rule: a deterministic map from profiles to committees.
pub trait Rule {
    /// Number of alternatives `m`.
    fn alternatives(&self) -> usize;
    /// Number of voters `n`.
    fn voters(&self) -> usize;
    fn elect(&self, profile: &Profile) -> Committee;

    /// Evaluates the rule on every profile.
    fn tabulate(&self, budget: Budget) -> Result<RuleTable>
    where
        Self: Sized,
    {
        tabulate(self, budget)
    }
}

impl<R: Rule + ?Sized> Rule for &R {
    fn alternatives(&self) -> usize {
        (**self).alternatives()
    }
    fn voters(&self) -> usize {
        (**self).voters()
    }
    fn elect(&self, profile: &Profile) -> Committee {
        (**self).elect(profile)
    }
}

impl<R: Rule + ?Sized> Rule for alloc::boxed::Box<R> {
    fn alternatives(&self) -> usize {
        (**self).alternatives()
    }
    fn voters(&self) -> usize {
        (**self).voters()
    }
    fn elect(&self, profile: &Profile) -> Committee {
        (**self).elect(profile)
    }
}

/// `outcomes[i] = rule(profile with index i)` for all `i`.
pub fn tabulate<R: Rule + ?Sized>(rule: &R, budget: Budget) -> Result<RuleTable> {
    let space = ProfileSpace::new(rule.alternatives(), rule.voters(), budget)?;
    let outcomes = space.iter().map(|p| rule.elect(&p)).collect();
    Ok(RuleTable {
        m: space.m(),
        n: space.n(),
        outcomes,
    })
}

/// A rule given explicitly by its outcome on every profile, in profile-index order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RuleTable {
    m: usize,
    n: usize,
    outcomes: Vec<Committee>,
}

impl RuleTable {
    pub fn new(m: usize, n: usize, outcomes: Vec<Committee>) -> Result<Self> {
        if m < 2 || n < 1 {
            return Err(Error::TooSmall { m, n, min: 2 });
        }
        if m > crate::MAX_ALTERNATIVES {
            return Err(Error::TooManyAlternatives {
                m,
                max: crate::MAX_ALTERNATIVES,
            });
        }
        let expected = (factorial(m) as u128).checked_pow(n as u32);
        if expected != Some(outcomes.len() as u128) {
            return Err(Error::TableLength {
                expected: expected.map_or(usize::MAX, |e| e as usize),
                found: outcomes.len(),
            });
        }
        if let Some(bad) = outcomes.iter().find(|c| !c.fits(m)) {
            return Err(Error::AlternativeOutOfRange {
                alternative: bad.hi(),
                m,
            });
        }
        Ok(RuleTable { m, n, outcomes })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn outcomes(&self) -> &[Committee] {
        &self.outcomes
    }

    #[inline]
    pub fn outcome(&self, index: usize) -> Committee {
        self.outcomes[index]
    }

    /// The profile space this table is indexed by. The table's existence already proves it fits in memory.
    pub fn space(&self) -> ProfileSpace {
        ProfileSpace::new(self.m, self.n, Budget(u64::MAX)).expect("table dimensions were validated")
    }

    /// Copy with one outcome replaced.
    pub fn mutate(&self, index: usize, new: Committee) -> Result<RuleTable> {
        if index >= self.len() {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.len(),
            });
        }
        if !new.fits(self.m) {
            return Err(Error::AlternativeOutOfRange {
                alternative: new.hi(),
                m: self.m,
            });
        }
        let mut outcomes = self.outcomes.clone();
        outcomes[index] = new;
        Ok(RuleTable {
            m: self.m,
            n: self.n,
            outcomes,
        })
    }
}

impl Rule for RuleTable {
    fn alternatives(&self) -> usize {
        self.m
    }
    fn voters(&self) -> usize {
        self.n
    }
    fn elect(&self, profile: &Profile) -> Committee {
        self.outcomes[profile.index()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules;
    use alloc::vec;

    #[test]
    fn constant_rule_tabulates_to_copies() {
        let ab = Committee::new(0, 1).unwrap();
        let t = rules::constant(3, 2, ab).tabulate(Budget::default()).unwrap();
        assert_eq!(t.len(), 36);
        assert!(t.outcomes().iter().all(|&c| c == ab));
    }

    #[test]
    fn dictator_depends_on_leading_digit_only() {
        let t = rules::dictator(3, 2, 0).tabulate(Budget::default()).unwrap();
        for i in 0..t.len() {
            assert_eq!(t.outcome(i), t.outcome((i / 6) * 6));
        }
    }

    #[test]
    fn tabulate_roundtrip_matches_oracle() {
        let rule = rules::marian_majority(3, 2);
        let t = rule.tabulate(Budget::default()).unwrap();
        for p in t.space().iter() {
            assert_eq!(t.elect(&p), rule.elect(&p));
        }
    }

    #[test]
    fn table_validation() {
        let ab = Committee::new(0, 1).unwrap();
        assert!(matches!(
            RuleTable::new(3, 1, vec![ab; 5]),
            Err(Error::TableLength { expected: 6, found: 5 })
        ));
        let cd = Committee::new(2, 3).unwrap();
        assert!(RuleTable::new(3, 1, vec![cd; 6]).is_err());
        assert!(RuleTable::new(3, 1, vec![ab; 6]).is_ok());
    }

    #[test]
    fn mutation() {
        let ab = Committee::new(0, 1).unwrap();
        let bc = Committee::new(1, 2).unwrap();
        let t = RuleTable::new(3, 1, vec![ab; 6]).unwrap();
        let u = t.mutate(2, bc).unwrap();
        assert_eq!(u.outcomes().iter().zip(t.outcomes()).filter(|(a, b)| a != b).count(), 1);
        assert_eq!(t.mutate(2, ab).unwrap(), t);
        assert_eq!(u.mutate(2, ab).unwrap(), t);
        assert!(t.mutate(6, ab).is_err());
    }
}
