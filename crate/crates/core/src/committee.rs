// SPDX-License-Identifier: Apache-2.0

use core::fmt;

use crate::profile::{alternative_name, Alternative, Ballot};
use crate::{Error, Result};

/// Unordered pair of distinct alternatives, stored with `lo < hi`.
///
/// The derived ordering is the canonical one: `ab < ac < ad < bc < bd < cd`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Committee {
    lo: Alternative,
    hi: Alternative,
}

/// Number of committees over `m` alternatives.
pub fn committee_count(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

impl Committee {
    pub fn new(a: Alternative, b: Alternative) -> Result<Self> {
        match a.cmp(&b) {
            core::cmp::Ordering::Less => Ok(Committee { lo: a, hi: b }),
            core::cmp::Ordering::Greater => Ok(Committee { lo: b, hi: a }),
            core::cmp::Ordering::Equal => Err(Error::DegenerateCommittee(a)),
        }
    }

    /// Parses two letters, e.g. `"bd"`.
    pub fn from_letters(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        if bytes.len() != 2 || !bytes.iter().all(u8::is_ascii_lowercase) {
            return Err(Error::InvalidParameters {
                rule: alloc::string::String::from("committee"),
                reason: alloc::format!("expected two letters, got `{s}`"),
            });
        }
        Committee::new(bytes[0] - b'a', bytes[1] - b'a')
    }

    pub fn lo(&self) -> Alternative {
        self.lo
    }

    pub fn hi(&self) -> Alternative {
        self.hi
    }

    pub fn members(&self) -> [Alternative; 2] {
        [self.lo, self.hi]
    }

    pub fn contains(&self, a: Alternative) -> bool {
        self.lo == a || self.hi == a
    }

    /// The member that is not `a`, if `a` is a member.
    pub fn other(&self, a: Alternative) -> Option<Alternative> {
        if a == self.lo {
            Some(self.hi)
        } else if a == self.hi {
            Some(self.lo)
        } else {
            None
        }
    }

    /// Shares exactly one endpoint with `other`.
    pub fn is_incident(&self, other: &Committee) -> bool {
        self != other && (other.contains(self.lo) || other.contains(self.hi))
    }

    pub fn fits(&self, m: usize) -> bool {
        usize::from(self.hi) < m
    }

    pub(crate) fn mask(&self) -> u32 {
        (1 << self.lo) | (1 << self.hi)
    }

    /// Position in the canonical order of all committees over `m` alternatives.
    pub fn index(&self, m: usize) -> usize {
        let lo = usize::from(self.lo);
        let hi = usize::from(self.hi);
        lo * m - lo * (lo + 1) / 2 + (hi - lo - 1)
    }

    /// All committees over `m` alternatives in canonical order.
    pub fn all(m: usize) -> impl Iterator<Item = Committee> {
        let m = m as u8;
        (0..m).flat_map(move |lo| (lo + 1..m).map(move |hi| Committee { lo, hi }))
    }

    /// The member ranked higher on `b`.
    #[inline]
    pub fn best(&self, b: &Ballot) -> Alternative {
        if b.prefers(self.lo, self.hi) {
            self.lo
        } else {
            self.hi
        }
    }

    /// The member ranked lower on `b`.
    #[inline]
    pub fn worst(&self, b: &Ballot) -> Alternative {
        if b.prefers(self.lo, self.hi) {
            self.hi
        } else {
            self.lo
        }
    }
}

impl fmt::Display for Committee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", alternative_name(self.lo), alternative_name(self.hi))
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Committee {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn canonical_form() {
        assert_eq!(Committee::new(3, 1).unwrap(), Committee::new(1, 3).unwrap());
        assert!(Committee::new(2, 2).is_err());
        assert_eq!(Committee::from_letters("db").unwrap().members(), [1, 3]);
    }

    #[test]
    fn index_matches_enumeration() {
        for m in 2..=8 {
            let all: Vec<_> = Committee::all(m).collect();
            assert_eq!(all.len(), committee_count(m));
            for (i, c) in all.iter().enumerate() {
                assert_eq!(c.index(m), i);
            }
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn incidence() {
        let ab = Committee::from_letters("ab").unwrap();
        let bc = Committee::from_letters("bc").unwrap();
        let cd = Committee::from_letters("cd").unwrap();
        assert!(ab.is_incident(&bc));
        assert!(!ab.is_incident(&cd));
        assert!(!ab.is_incident(&ab));
    }
}
