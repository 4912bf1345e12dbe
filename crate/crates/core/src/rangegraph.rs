// SPDX-License-Identifier: Apache-2.0

//! The range graph: alternatives as vertices, elected committees as edges.

use alloc::collections::VecDeque;
use alloc::vec::Vec;
use core::fmt;

use crate::profile::{Alternative, MAX_ALTERNATIVES};
use crate::{Committee, Error, Result, RuleTable};

/// Simple undirected graph on `0..m` stored as adjacency bitmasks.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RangeGraph {
    m: usize,
    adj: [u16; MAX_ALTERNATIVES],
}

impl RangeGraph {
    pub fn empty(m: usize) -> Self {
        assert!(m <= MAX_ALTERNATIVES, "at most {MAX_ALTERNATIVES} vertices");
        RangeGraph {
            m,
            adj: [0; MAX_ALTERNATIVES],
        }
    }

    pub fn from_edges(m: usize, edges: impl IntoIterator<Item = Committee>) -> Result<Self> {
        if m > MAX_ALTERNATIVES {
            return Err(Error::TooManyAlternatives {
                m,
                max: MAX_ALTERNATIVES,
            });
        }
        let mut g = RangeGraph::empty(m);
        for e in edges {
            if !e.fits(m) {
                return Err(Error::AlternativeOutOfRange {
                    alternative: e.hi(),
                    m,
                });
            }
            g.insert(e);
        }
        Ok(g)
    }

    /// Parses edges written as letter pairs, e.g. `["ab", "bc"]`.
    pub fn from_letters(m: usize, edges: &[&str]) -> Result<Self> {
        let edges = edges
            .iter()
            .map(|s| Committee::from_letters(s))
            .collect::<Result<Vec<_>>>()?;
        RangeGraph::from_edges(m, edges)
    }

    pub fn complete(m: usize) -> Self {
        RangeGraph::from_edges(m, Committee::all(m)).expect("m checked")
    }

    /// Graph whose edge set is given by bit `i` of `bits` for the `i`-th canonical committee.
    pub fn from_bits(m: usize, bits: u64) -> Self {
        let edges = Committee::all(m)
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, c)| c);
        RangeGraph::from_edges(m, edges).expect("m checked")
    }

    pub fn insert(&mut self, e: Committee) {
        self.adj[usize::from(e.lo())] |= 1 << e.hi();
        self.adj[usize::from(e.hi())] |= 1 << e.lo();
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, a: Alternative, b: Alternative) -> bool {
        self.adj[usize::from(a)] >> b & 1 == 1
    }

    pub fn contains(&self, e: Committee) -> bool {
        self.has_edge(e.lo(), e.hi())
    }

    pub fn degree(&self, a: Alternative) -> usize {
        self.adj[usize::from(a)].count_ones() as usize
    }

    pub fn neighbors(&self, a: Alternative) -> impl Iterator<Item = Alternative> + '_ {
        let mask = self.adj[usize::from(a)];
        (0..self.m as Alternative).filter(move |&b| mask >> b & 1 == 1)
    }

    pub(crate) fn neighbor_mask(&self, a: Alternative) -> u16 {
        self.adj[usize::from(a)]
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = Committee> + '_ {
        Committee::all(self.m).filter(move |e| self.contains(*e))
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.m].iter().map(|x| x.count_ones() as usize).sum::<usize>() / 2
    }
}

impl fmt::Debug for RangeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RangeGraph(m={}, {{", self.m)?;
        for (i, e) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("})")
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for RangeGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RangeGraph", 2)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("edges", &self.edges().collect::<Vec<_>>())?;
        st.end()
    }
}

/// Edges are exactly the elected committees.
pub fn build_range_graph(table: &RuleTable) -> RangeGraph {
    let mut g = RangeGraph::empty(table.m());
    for &c in table.outcomes() {
        g.insert(c);
    }
    g
}

/// No isolated vertices.
pub fn check_weak_viability(g: &RangeGraph) -> bool {
    (0..g.m() as Alternative).all(|a| g.degree(a) > 0)
}

pub fn is_onto(g: &RangeGraph) -> bool {
    g.m() >= 2 && g.edge_count() == g.m() * (g.m() - 1) / 2
}

/// Two-colouring witness. The side containing vertex 0 is always `left`.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Bipartition {
    pub left: Vec<Alternative>,
    pub right: Vec<Alternative>,
}

/// BFS two-colouring from the lowest unvisited vertex of each component; roots go left.
pub fn is_bipartite(g: &RangeGraph) -> Option<Bipartition> {
    let m = g.m();
    let mut color: [Option<bool>; MAX_ALTERNATIVES] = [None; MAX_ALTERNATIVES];
    let mut queue = VecDeque::new();
    for root in 0..m {
        if color[root].is_some() {
            continue;
        }
        color[root] = Some(false);
        queue.push_back(root as Alternative);
        while let Some(v) = queue.pop_front() {
            let cv = color[usize::from(v)].expect("queued vertices are coloured");
            for w in g.neighbors(v) {
                match color[usize::from(w)] {
                    None => {
                        color[usize::from(w)] = Some(!cv);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cv => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let (left, right) = (0..m as Alternative).partition(|&a| color[usize::from(a)] == Some(false));
    Some(Bipartition { left, right })
}

/// Two non-incident edges whose endpoints are not cross-linked as required.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EdgeConnectivityViolation {
    pub first: Committee,
    pub second: Committee,
}

/// For non-incident edges `{a,b}`, `{c,d}`, each endpoint of one edge must
/// be adjacent to some endpoint of the other.
///
/// Returns the canonically first violating pair (ordered `first < second`).
pub fn is_edge_connected(g: &RangeGraph) -> Option<EdgeConnectivityViolation> {
    let edges: Vec<Committee> = g.edges().collect();
    for (i, &x) in edges.iter().enumerate() {
        for &y in &edges[i + 1..] {
            if x.is_incident(&y) {
                continue;
            }
            let other = y.mask() as u16;
            let covered = |v: Alternative| g.neighbor_mask(v) & other != 0;
            let back = x.mask() as u16;
            let covered_back = |v: Alternative| g.neighbor_mask(v) & back != 0;
            let ok = covered(x.lo()) && covered(x.hi()) && covered_back(y.lo()) && covered_back(y.hi());
            if !ok {
                return Some(EdgeConnectivityViolation { first: x, second: y });
            }
        }
    }
    None
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Diameter {
    Finite(usize),
    /// Some pair of vertices is disconnected.
    Infinite,
}

#[cfg(feature = "serde")]
impl serde::Serialize for Diameter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        match self {
            Diameter::Finite(d) => s.serialize_u64(*d as u64),
            Diameter::Infinite => s.serialize_str("infinity"),
        }
    }
}

pub fn diameter(g: &RangeGraph) -> Diameter {
    let m = g.m();
    let mut best = 0;
    for src in 0..m {
        let mut dist = [usize::MAX; MAX_ALTERNATIVES];
        dist[src] = 0;
        let mut queue = VecDeque::from([src as Alternative]);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if dist[usize::from(w)] == usize::MAX {
                    dist[usize::from(w)] = dist[usize::from(v)] + 1;
                    queue.push_back(w);
                }
            }
        }
        for &d in &dist[..m] {
            if d == usize::MAX {
                return Diameter::Infinite;
            }
            best = best.max(d);
        }
    }
    Diameter::Finite(best)
}

/// Lowest vertex that lies on no triangle.
pub fn all_vertices_in_3cycle(g: &RangeGraph) -> Option<Alternative> {
    (0..g.m() as Alternative).find(|&a| {
        !g.neighbors(a)
            .any(|b| g.neighbor_mask(a) & g.neighbor_mask(b) != 0)
    })
}

/// Lowest common neighbour of the edge's endpoints.
pub fn triangle_for_edge(g: &RangeGraph, e: Committee) -> Result<Option<Alternative>> {
    if !e.fits(g.m()) || !g.contains(e) {
        return Err(Error::EdgeNotPresent(e));
    }
    let common = g.neighbor_mask(e.lo()) & g.neighbor_mask(e.hi());
    Ok((common != 0).then(|| common.trailing_zeros() as Alternative))
}

/// Whether the graph has no cycle.
pub fn is_acyclic(g: &RangeGraph) -> bool {
    let components = connected_components(g);
    g.edge_count() + components == g.m()
}

fn connected_components(g: &RangeGraph) -> usize {
    let mut seen = 0u16;
    let mut count = 0;
    for root in 0..g.m() as Alternative {
        if seen >> root & 1 == 1 {
            continue;
        }
        count += 1;
        let mut stack = Vec::from([root]);
        seen |= 1 << root;
        while let Some(v) = stack.pop() {
            for w in g.neighbors(v) {
                if seen >> w & 1 == 0 {
                    seen |= 1 << w;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// Coarse shape of a range graph.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "kebab-case"))]
pub enum GraphClass {
    Complete,
    CompleteBipartite,
    /// Bipartite but missing some cross edge (or with an isolated vertex).
    Bipartite,
    Other,
}

impl GraphClass {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphClass::Complete => "complete",
            GraphClass::CompleteBipartite => "complete-bipartite",
            GraphClass::Bipartite => "bipartite",
            GraphClass::Other => "other",
        }
    }
}

pub fn classify_graph(g: &RangeGraph) -> GraphClass {
    if is_onto(g) {
        return GraphClass::Complete;
    }
    match is_bipartite(g) {
        Some(parts) if is_complete_bipartite(g, &parts) => GraphClass::CompleteBipartite,
        Some(_) => GraphClass::Bipartite,
        None => GraphClass::Other,
    }
}

fn is_complete_bipartite(g: &RangeGraph, parts: &Bipartition) -> bool {
    !parts.left.is_empty()
        && !parts.right.is_empty()
        && parts
            .left
            .iter()
            .all(|&x| parts.right.iter().all(|&y| g.has_edge(x, y)))
}
