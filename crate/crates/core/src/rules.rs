// SPDX-License-Identifier: Apache-2.0

//! Rule constructors and the name registry shared by the CLI and tests.
//!
//! Registry syntax is `name` or `name:p1,p2,...`:
//!
//! | name | params | rule |
//! |---|---|---|
//! | `apple_orange` | | one voter, four alternatives, top pair unless it is `{a,d}` |
//! | `marian_majority` | `m,n` | `a` always elected, majority for the second seat |
//! | `marian_dictator` | `m,n,i` | `a` always elected, voter `i` picks the second seat |
//! | `split_majority` | `n` | majority on `{a,b}` plus majority on `{c,d}` |
//! | `dictator` | `m,n,i` | voter `i`'s top two |
//! | `graph_dictator` | `m,n,i,ab+ac+...` | voter `i`'s favourite edge of the given graph |
//! | `irreducible_bipartite` | | one voter; `c` vs `d` picks between `a`/`b`, `a` vs `b` picks between `c`/`d` |
//! | `constant` | `m,n,ab` | always the given committee |
//! | `top_pair_plurality` | `m,n` | two most frequent top-two entries, lowest index on ties |

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::profile::{Alternative, Profile, Voter, MAX_ALTERNATIVES};
use crate::rangegraph::{is_edge_connected, RangeGraph};
use crate::structure::favourite_committee;
use crate::{Committee, Error, Result, Rule};

type Eval = Box<dyn Fn(&Profile) -> Committee + Send + Sync>;

/// A rule given by a closure, tagged with its registry identifier.
pub struct NamedRule {
    id: String,
    m: usize,
    n: usize,
    eval: Eval,
}

impl NamedRule {
    pub fn new(
        id: impl Into<String>,
        m: usize,
        n: usize,
        eval: impl Fn(&Profile) -> Committee + Send + Sync + 'static,
    ) -> Self {
        NamedRule {
            id: id.into(),
            m,
            n,
            eval: Box::new(eval),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }
}

impl fmt::Debug for NamedRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NamedRule")
            .field("id", &self.id)
            .field("m", &self.m)
            .field("n", &self.n)
            .finish()
    }
}

impl Rule for NamedRule {
    fn alternatives(&self) -> usize {
        self.m
    }
    fn voters(&self) -> usize {
        self.n
    }
    fn elect(&self, profile: &Profile) -> Committee {
        (self.eval)(profile)
    }
}

fn pair(a: Alternative, b: Alternative) -> Committee {
    Committee::new(a, b).expect("distinct alternatives")
}

/// Pairwise majority between `x` and `y`; ties go to the lower index.
fn majority(p: &Profile, x: Alternative, y: Alternative) -> Alternative {
    let x_wins = p.ballots().iter().filter(|b| b.prefers(x, y)).count();
    let (lo, hi) = if x < y { (x, y) } else { (y, x) };
    match (2 * x_wins).cmp(&p.n()) {
        core::cmp::Ordering::Greater => x,
        core::cmp::Ordering::Less => y,
        core::cmp::Ordering::Equal => {
            let _ = hi;
            lo
        }
    }
}

/// One voter over `{a,b,c,d}`: the top two, except that a top pair of
/// `{a,d}` yields the first and third choices instead.
pub fn apple_orange() -> NamedRule {
    NamedRule::new("apple_orange", 4, 1, |p| {
        let b = p.ballot(0);
        let top = pair(b.at(0), b.at(1));
        if top == pair(0, 3) {
            pair(b.at(0), b.at(2))
        } else {
            top
        }
    })
}

/// Alternative `a` always sits; the second seat goes to the lowest-index
/// non-Marius alternative that no other non-Marius alternative beats by a
/// strict pairwise majority (or to `b` if every one is beaten).
///
/// With `m = 3` this is plain majority between `b` and `c`, ties to `b`.
pub fn marian_majority(m: usize, n: usize) -> NamedRule {
    assert!((3..=MAX_ALTERNATIVES).contains(&m) && n >= 1);
    NamedRule::new(alloc::format!("marian_majority:{m},{n}"), m, n, move |p| {
        let rivals = 1..m as Alternative;
        let second = rivals
            .clone()
            .find(|&x| {
                rivals.clone().all(|y| {
                    y == x || {
                        let y_over_x = p.ballots().iter().filter(|b| b.prefers(y, x)).count();
                        2 * y_over_x <= p.n()
                    }
                })
            })
            .unwrap_or(1);
        pair(0, second)
    })
}

/// Alternative `a` always sits; voter `i`'s favourite among the rest takes the other seat.
pub fn marian_dictator(m: usize, n: usize, i: Voter) -> NamedRule {
    assert!((2..=MAX_ALTERNATIVES).contains(&m) && i < n);
    NamedRule::new(alloc::format!("marian_dictator:{m},{n},{i}"), m, n, move |p| {
        let b = p.ballot(i);
        let second = b.order().iter().copied().find(|&x| x != 0).expect("m >= 2");
        pair(0, second)
    })
}

/// Four alternatives; majority between `a` and `b` plus majority between `c` and `d`.
pub fn split_majority(n: usize) -> NamedRule {
    assert!(n >= 1);
    NamedRule::new(alloc::format!("split_majority:{n}"), 4, n, |p| {
        pair(majority(p, 0, 1), majority(p, 2, 3))
    })
}

/// Voter `i`'s top two alternatives.
pub fn dictator(m: usize, n: usize, i: Voter) -> NamedRule {
    assert!((2..=MAX_ALTERNATIVES).contains(&m) && i < n);
    NamedRule::new(alloc::format!("dictator:{m},{n},{i}"), m, n, move |p| {
        let b = p.ballot(i);
        pair(b.at(0), b.at(1))
    })
}

/// Voter `i`'s favourite edge of `g`. The range of the result is exactly `g`.
pub fn graph_dictator(g: RangeGraph, i: Voter, n: usize) -> Result<NamedRule> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyRange);
    }
    if is_edge_connected(&g).is_some() {
        return Err(Error::NotEdgeConnected);
    }
    if i >= n {
        return Err(Error::VoterOutOfRange { voter: i, n });
    }
    let edges: Vec<String> = g.edges().map(|e| e.to_string()).collect();
    let id = alloc::format!("graph_dictator:{},{n},{i},{}", g.m(), edges.join("+"));
    Ok(NamedRule::new(id, g.m(), n, move |p| {
        favourite_committee(p.ballot(i), &g).expect("nonempty graph")
    }))
}

/// One voter over `{a,b,c,d}`: `a` sits if `c ≻ d` else `b`; `c` sits if `a ≻ b` else `d`.
pub fn irreducible_bipartite() -> NamedRule {
    NamedRule::new("irreducible_bipartite", 4, 1, |p| {
        let b = p.ballot(0);
        let first = if b.prefers(2, 3) { 0 } else { 1 };
        let second = if b.prefers(0, 1) { 2 } else { 3 };
        pair(first, second)
    })
}

pub fn constant(m: usize, n: usize, c: Committee) -> NamedRule {
    assert!(c.fits(m) && n >= 1);
    NamedRule::new(alloc::format!("constant:{m},{n},{c}"), m, n, move |_| c)
}

/// Elects the two alternatives appearing most often in voters' top two
/// positions, lowest index first on ties. Manipulable; used as a negative fixture.
pub fn top_pair_plurality(m: usize, n: usize) -> NamedRule {
    assert!((2..=MAX_ALTERNATIVES).contains(&m) && n >= 1);
    NamedRule::new(alloc::format!("top_pair_plurality:{m},{n}"), m, n, move |p| {
        let mut score = [0usize; MAX_ALTERNATIVES];
        for b in p.ballots() {
            score[usize::from(b.at(0))] += 1;
            score[usize::from(b.at(1))] += 1;
        }
        let mut ranked: Vec<Alternative> = (0..m as Alternative).collect();
        ranked.sort_by_key(|&a| (core::cmp::Reverse(score[usize::from(a)]), a));
        pair(ranked[0], ranked[1])
    })
}

/// Registry names, for help text.
pub const RULE_NAMES: &[&str] = &[
    "apple_orange",
    "marian_majority:M,N",
    "marian_dictator:M,N,I",
    "split_majority:N",
    "dictator:M,N,I",
    "graph_dictator:M,N,I,EDGES",
    "irreducible_bipartite",
    "constant:M,N,XY",
    "top_pair_plurality:M,N",
];

/// Builds a rule from its registry identifier, e.g. `dictator:4,2,0`.
pub fn construct(spec: &str) -> Result<NamedRule> {
    let (name, params) = match spec.split_once(':') {
        Some((name, rest)) => (name, rest.split(',').map(str::trim).collect::<Vec<_>>()),
        None => (spec, Vec::new()),
    };
    let bad = |reason: &str| Error::InvalidParameters {
        rule: name.to_string(),
        reason: reason.to_string(),
    };
    let expect = |count: usize| {
        if params.len() == count {
            Ok(())
        } else {
            Err(bad(&alloc::format!("expected {count} parameters, got {}", params.len())))
        }
    };
    let num = |i: usize| -> Result<usize> {
        params[i]
            .parse::<usize>()
            .map_err(|_| bad(&alloc::format!("`{}` is not a number", params[i])))
    };
    let dims = |min_m: usize| -> Result<(usize, usize)> {
        let (m, n) = (num(0)?, num(1)?);
        if !(min_m..=MAX_ALTERNATIVES).contains(&m) {
            return Err(bad(&alloc::format!("m must be in {min_m}..={MAX_ALTERNATIVES}")));
        }
        if n < 1 {
            return Err(bad("n must be at least 1"));
        }
        Ok((m, n))
    };
    let voter = |i: usize, n: usize| -> Result<Voter> {
        let v = num(i)?;
        if v >= n {
            return Err(bad("voter index must be below n"));
        }
        Ok(v)
    };
    match name {
        "apple_orange" => {
            expect(0)?;
            Ok(apple_orange())
        }
        "irreducible_bipartite" => {
            expect(0)?;
            Ok(irreducible_bipartite())
        }
        "marian_majority" => {
            expect(2)?;
            let (m, n) = dims(3)?;
            Ok(marian_majority(m, n))
        }
        "marian_dictator" => {
            expect(3)?;
            let (m, n) = dims(2)?;
            Ok(marian_dictator(m, n, voter(2, n)?))
        }
        "split_majority" => {
            expect(1)?;
            let n = num(0)?;
            if n < 1 {
                return Err(bad("n must be at least 1"));
            }
            Ok(split_majority(n))
        }
        "dictator" => {
            expect(3)?;
            let (m, n) = dims(2)?;
            Ok(dictator(m, n, voter(2, n)?))
        }
        "graph_dictator" => {
            expect(4)?;
            let (m, n) = dims(2)?;
            let i = voter(2, n)?;
            let edges: Vec<&str> = params[3].split('+').filter(|s| !s.is_empty()).collect();
            let g = RangeGraph::from_letters(m, &edges)?;
            graph_dictator(g, i, n)
        }
        "constant" => {
            expect(3)?;
            let (m, n) = dims(2)?;
            let c = Committee::from_letters(params[2])?;
            if !c.fits(m) {
                return Err(bad("committee outside the alternatives"));
            }
            Ok(constant(m, n, c))
        }
        "top_pair_plurality" => {
            expect(2)?;
            let (m, n) = dims(2)?;
            Ok(top_pair_plurality(m, n))
        }
        _ => Err(Error::UnknownRule(spec.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rangegraph::build_range_graph;
    use crate::strategy::{check_spo, check_spp};
    use crate::structure::{check_weak_dictator, decompose, find_marius};
    use crate::{Budget, RuleTable};

    fn elect(r: &NamedRule, ballots: &[&str]) -> String {
        r.elect(&Profile::from_letters(ballots).unwrap()).to_string()
    }

    fn table(r: &NamedRule) -> RuleTable {
        r.tabulate(Budget::default()).unwrap()
    }

    #[test]
    fn marian_majority_examples() {
        let r = marian_majority(3, 2);
        assert_eq!(elect(&r, &["bca", "abc"]), "ab");
        assert_eq!(elect(&r, &["abc", "acb"]), "ab");
        let r = marian_majority(3, 3);
        assert_eq!(elect(&r, &["acb", "cab", "abc"]), "ac");
    }

    #[test]
    fn split_majority_examples() {
        let r = split_majority(2);
        assert_eq!(elect(&r, &["acbd", "cadb"]), "ac");
        assert_eq!(elect(&r, &["abcd", "badc"]), "ac");
        let r = split_majority(3);
        assert_eq!(elect(&r, &["badc", "bdac", "abdc"]), "bd");
    }

    #[test]
    fn apple_orange_examples() {
        let r = apple_orange();
        assert_eq!(elect(&r, &["adbc"]), "ab");
        assert_eq!(elect(&r, &["dacb"]), "cd");
        assert_eq!(elect(&r, &["bcad"]), "bc");
    }

    #[test]
    fn dictator_examples() {
        let r = dictator(3, 2, 0);
        assert_eq!(elect(&r, &["cab", "abc"]), "ac");
        assert_eq!(elect(&r, &["cab", "bca"]), "ac");
        let t = table(&dictator(2, 3, 1));
        assert!(t.outcomes().iter().all(|c| c.to_string() == "ab"));
    }

    #[test]
    fn graph_dictator_examples() {
        let ao = RangeGraph::from_letters(4, &["ab", "ac", "bc", "bd", "cd"]).unwrap();
        let r = graph_dictator(ao, 0, 1).unwrap();
        assert_eq!(elect(&r, &["adbc"]), "ab");
        assert_eq!(build_range_graph(&table(&r)), ao);
        let k4 = graph_dictator(RangeGraph::complete(4), 0, 2).unwrap();
        assert_eq!(table(&k4), table(&dictator(4, 2, 0)));
        let pleb = RangeGraph::from_letters(4, &["ab", "ac", "bc", "bd", "cd"]).unwrap();
        assert_eq!(elect(&graph_dictator(pleb, 0, 1).unwrap(), &["adbc"]), "ab");
        let two_k2 = RangeGraph::from_letters(4, &["ab", "cd"]).unwrap();
        assert_eq!(graph_dictator(two_k2, 0, 1).unwrap_err(), Error::NotEdgeConnected);
    }

    #[test]
    fn irreducible_bipartite_examples() {
        let r = irreducible_bipartite();
        assert_eq!(elect(&r, &["acbd"]), "ac");
        assert_eq!(elect(&r, &["dbac"]), "bd");
        assert_eq!(elect(&r, &["dabc"]), "bc");
        let g = build_range_graph(&table(&r));
        assert_eq!(g, RangeGraph::from_letters(4, &["ac", "ad", "bc", "bd"]).unwrap());
        let t = table(&r);
        assert!(decompose(&t).is_none());
        assert!(!(check_spo(&t) && check_spp(&t)));
    }

    #[test]
    fn marian_majority_four_is_not_strategy_proof() {
        let t = table(&marian_majority(4, 3));
        assert_eq!(find_marius(&t), Some(0));
        assert!(!(check_spo(&t) && check_spp(&t)));
        let t = table(&marian_dictator(4, 2, 1));
        assert!(check_spo(&t) && check_spp(&t));
        assert_eq!(check_weak_dictator(&t), alloc::vec![1]);
    }

    #[test]
    fn registry() {
        assert_eq!(construct("apple_orange").unwrap().id(), "apple_orange");
        assert_eq!(construct("dictator:4,2,0").unwrap().id(), "dictator:4,2,0");
        let g = construct("graph_dictator:4,1,0,cd+ab+ac+bc+bd").unwrap();
        assert_eq!(g.id(), "graph_dictator:4,1,0,ab+ac+bc+bd+cd");
        assert_eq!(construct("constant:3,1,bc").unwrap().id(), "constant:3,1,bc");
        assert!(matches!(construct("nope"), Err(Error::UnknownRule(_))));
        assert!(construct("dictator:4,2,2").is_err());
        assert!(construct("dictator:4,2").is_err());
        assert!(construct("marian_majority:2,2").is_err());
        assert!(construct("constant:3,1,ad").is_err());
        assert!(construct("graph_dictator:4,1,0,ab+cd").is_err());
        for spec in ["apple_orange", "marian_majority:3,2", "marian_dictator:4,2,0", "split_majority:2",
                     "dictator:3,1,0", "irreducible_bipartite", "constant:3,2,ab", "top_pair_plurality:3,2"] {
            assert_eq!(construct(spec).unwrap().id(), spec);
        }
    }
}
