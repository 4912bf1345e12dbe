// SPDX-License-Identifier: Apache-2.0

//! Committee orders induced by ballots, their restriction to a range graph,
//! and the linked-domain decision procedure.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::prefs::{strictly_prefers, SetOrderKind};
use crate::profile::{factorial, Ballot};
use crate::rangegraph::RangeGraph;
use crate::{Committee, Error, Result};

/// A strict ranking of committees, most preferred first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(transparent))]
pub struct CommitteeOrder(Vec<Committee>);

impl CommitteeOrder {
    pub fn as_slice(&self) -> &[Committee] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Committee> {
        self.0.first().copied()
    }

    pub fn position(&self, c: Committee) -> Option<usize> {
        self.0.iter().position(|&x| x == c)
    }

    fn universe(&self) -> Vec<Committee> {
        let mut u = self.0.clone();
        u.sort_unstable();
        u
    }
}

/// All committees ranked by best member, ties broken by worst member.
pub fn extend_lex(b: &Ballot) -> CommitteeOrder {
    let mut all: Vec<Committee> = Committee::all(b.len()).collect();
    all.sort_by_key(|c| (b.position(c.best(b)), b.position(c.worst(b))));
    debug_assert!(all
        .windows(2)
        .all(|w| strictly_prefers(SetOrderKind::Lexicographic, b, w[0], w[1])));
    CommitteeOrder(all)
}

/// The subsequence of `order` made of the edges of `g`.
pub fn restrict_order(order: &CommitteeOrder, g: &RangeGraph) -> Result<CommitteeOrder> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyRange);
    }
    Ok(CommitteeOrder(
        order.0.iter().copied().filter(|&c| c.fits(g.m()) && g.contains(c)).collect(),
    ))
}

/// A nonempty set of committee orders over one universe.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LinearDomain {
    universe: Vec<Committee>,
    orders: Vec<CommitteeOrder>,
}

impl LinearDomain {
    /// Deduplicates and sorts `orders`.
    pub fn new(orders: impl IntoIterator<Item = CommitteeOrder>) -> Result<Self> {
        let orders: Vec<CommitteeOrder> = orders.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let first = orders.first().ok_or(Error::UniverseTooSmall { min: 1 })?;
        let universe = first.universe();
        if universe.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MixedUniverse);
        }
        if orders.iter().any(|o| o.universe() != universe) {
            return Err(Error::MixedUniverse);
        }
        Ok(LinearDomain { universe, orders })
    }

    /// Sorted canonically.
    pub fn universe(&self) -> &[Committee] {
        &self.universe
    }

    pub fn orders(&self) -> &[CommitteeOrder] {
        &self.orders
    }

    fn slot(&self, c: Committee) -> Result<usize> {
        self.universe.binary_search(&c).map_err(|_| Error::NotInUniverse(c))
    }

    /// `connected[i][j]`: some order ranks universe `i` first and `j` second.
    fn first_second(&self) -> Vec<Vec<bool>> {
        let q = self.universe.len();
        let mut table = alloc::vec![alloc::vec![false; q]; q];
        for o in &self.orders {
            if let [x, y, ..] = o.as_slice() {
                let (i, j) = (self.slot(*x).expect("in universe"), self.slot(*y).expect("in universe"));
                table[i][j] = true;
            }
        }
        table
    }
}

/// Restricted lexicographic orders of every ballot over `m` alternatives.
pub fn build_alpha_domain(m: usize, g: &RangeGraph) -> Result<LinearDomain> {
    if g.edge_count() == 0 {
        return Err(Error::EmptyRange);
    }
    let orders = (0..factorial(m))
        .map(|r| {
            let b = Ballot::from_rank(m, r)?;
            restrict_order(&extend_lex(&b), g)
        })
        .collect::<Result<Vec<_>>>()?;
    LinearDomain::new(orders)
}

/// Some order ranks `x` first and `y` second, and some order the reverse.
pub fn are_connected(d: &LinearDomain, x: Committee, y: Committee) -> Result<bool> {
    let (i, j) = (d.slot(x)?, d.slot(y)?);
    if i == j {
        return Err(Error::InvalidParameters {
            rule: alloc::string::String::from("are_connected"),
            reason: alloc::format!("{x} compared with itself"),
        });
    }
    let t = d.first_second();
    Ok(t[i][j] && t[j][i])
}

/// An ordering of the universe in which the first two are connected and
/// every later committee is connected to at least two earlier ones.
///
/// Tries starting pairs in canonical order. From a fixed start, an element
/// that can be appended stays appendable as the prefix grows, so greedily
/// appending the lowest addable committee reaches a full ordering whenever
/// one exists from that start; exhausting all starts decides the question.
pub fn is_linked(d: &LinearDomain) -> Result<Option<Vec<Committee>>> {
    let q = d.universe.len();
    if q < 2 {
        return Err(Error::UniverseTooSmall { min: 2 });
    }
    let ft = d.first_second();
    let conn = |i: usize, j: usize| ft[i][j] && ft[j][i];
    for i in 0..q {
        for j in i + 1..q {
            if !conn(i, j) {
                continue;
            }
            let mut placed = alloc::vec![false; q];
            placed[i] = true;
            placed[j] = true;
            let mut order = alloc::vec![i, j];
            while order.len() < q {
                let next = (0..q).find(|&k| {
                    !placed[k] && order.iter().filter(|&&p| conn(k, p)).count() >= 2
                });
                match next {
                    Some(k) => {
                        placed[k] = true;
                        order.push(k);
                    }
                    None => break,
                }
            }
            if order.len() == q {
                return Ok(Some(order.into_iter().map(|k| d.universe[k]).collect()));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Profile;
    use alloc::vec;

    fn c(s: &str) -> Committee {
        Committee::from_letters(s).unwrap()
    }

    fn ballot(s: &str) -> Ballot {
        *Profile::from_letters(&[s]).unwrap().ballot(0)
    }

    fn order(items: &[&str]) -> CommitteeOrder {
        CommitteeOrder(items.iter().map(|s| c(s)).collect())
    }

    fn apple_orange_graph() -> RangeGraph {
        RangeGraph::from_letters(4, &["ab", "ac", "bc", "bd", "cd"]).unwrap()
    }

    #[test]
    fn lexicographic_extension() {
        assert_eq!(
            extend_lex(&ballot("adbc")),
            order(&["ad", "ab", "ac", "bd", "cd", "bc"])
        );
        assert_eq!(extend_lex(&ballot("ab")), order(&["ab"]));
        assert_eq!(extend_lex(&ballot("abc")), order(&["ab", "ac", "bc"]));
    }

    #[test]
    fn restriction() {
        let full = extend_lex(&ballot("adbc"));
        assert_eq!(
            restrict_order(&full, &apple_orange_graph()).unwrap(),
            order(&["ab", "ac", "bd", "cd", "bc"])
        );
        assert_eq!(restrict_order(&full, &RangeGraph::complete(4)).unwrap(), full);
        let single = RangeGraph::from_letters(4, &["bc"]).unwrap();
        assert_eq!(restrict_order(&full, &single).unwrap(), order(&["bc"]));
        assert_eq!(restrict_order(&full, &RangeGraph::empty(4)), Err(Error::EmptyRange));
    }

    #[test]
    fn alpha_domains() {
        let d = build_alpha_domain(3, &RangeGraph::complete(3)).unwrap();
        assert_eq!(d.orders().len(), 6);
        let d = build_alpha_domain(2, &RangeGraph::complete(2)).unwrap();
        assert_eq!(d.orders(), &[order(&["ab"])]);
        let d = build_alpha_domain(4, &apple_orange_graph()).unwrap();
        assert!(d.orders().len() <= 24);
        assert_eq!(d.universe().len(), 5);
    }

    #[test]
    fn connectedness_follows_incidence() {
        let d = build_alpha_domain(4, &apple_orange_graph()).unwrap();
        assert_eq!(are_connected(&d, c("ab"), c("ac")), Ok(true));
        assert_eq!(are_connected(&d, c("ab"), c("cd")), Ok(false));
        assert!(are_connected(&d, c("ab"), c("ab")).is_err());
        assert_eq!(are_connected(&d, c("ab"), c("ad")), Err(Error::NotInUniverse(c("ad"))));
    }

    #[test]
    fn linkedness() {
        let d = build_alpha_domain(4, &apple_orange_graph()).unwrap();
        let w = is_linked(&d).unwrap().expect("linked");
        assert_eq!(w.len(), 5);
        let kbip = RangeGraph::from_letters(4, &["ac", "ad", "bc", "bd"]).unwrap();
        assert_eq!(is_linked(&build_alpha_domain(4, &kbip).unwrap()), Ok(None));
        let star = RangeGraph::from_letters(4, &["ab", "ac", "ad"]).unwrap();
        assert!(is_linked(&build_alpha_domain(4, &star).unwrap()).unwrap().is_some());
        let single = RangeGraph::from_letters(3, &["ab"]).unwrap();
        assert!(is_linked(&build_alpha_domain(3, &single).unwrap()).is_err());
    }

    #[test]
    fn domain_validation() {
        assert!(LinearDomain::new(vec![order(&["ab", "ac"]), order(&["ab", "bc"])]).is_err());
        assert!(LinearDomain::new(Vec::new()).is_err());
        let d = LinearDomain::new(vec![order(&["ab", "ac"]), order(&["ab", "ac"])]).unwrap();
        assert_eq!(d.orders().len(), 1);
    }
}
