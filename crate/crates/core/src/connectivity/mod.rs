//! Subset and rooted connectivity oracles, deficient sets, and the
//! brute-force reference enumeration.
//!
//! A set `U` is deficient with respect to a target `k` when both `U` and its
//! vertex-complement `U* = V \ (U ∪ N(U))` contain terminals and
//! `|N(U)| < k`. With pairwise non-adjacent terminals, `T` is `k`-connected
//! exactly when no deficient set exists.

mod brute;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{pair_connectivity_capped, Graph, VertexId, VertexSet};

pub use brute::{MaskGraph, BRUTE_FORCE_BOUND};

/// Ordered, duplicate-free set of terminal vertices.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<VertexId>", into = "Vec<VertexId>")]
pub struct TerminalSet {
    ids: Vec<VertexId>,
    set: VertexSet,
}

impl TerminalSet {
    pub fn new(mut ids: Vec<VertexId>) -> Result<Self> {
        if ids.is_empty() {
            return Err(Error::InvalidInput("terminal set is empty".into()));
        }
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!("duplicate terminal {}", w[0])));
        }
        let set = ids.iter().copied().collect();
        Ok(Self { ids, set })
    }

    /// Checks that every terminal is a vertex of `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        self.ids.iter().try_for_each(|&v| g.check_vertex(v))
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.set.contains(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.ids.iter().copied()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn as_set(&self) -> &VertexSet {
        &self.set
    }

    /// Number of terminals in `s`.
    pub fn count_in(&self, s: &VertexSet) -> usize {
        self.set.intersection_len(s)
    }

    /// The first `count` terminals in ascending order.
    pub fn prefix(&self, count: usize) -> Result<TerminalSet> {
        TerminalSet::new(self.ids[..count.min(self.ids.len())].to_vec())
    }

    /// Unordered terminal pairs `(s, t)` with `s < t`, lexicographic.
    pub fn pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.ids
            .iter()
            .enumerate()
            .flat_map(move |(i, &s)| self.ids[i + 1..].iter().map(move |&t| (s, t)))
    }
}

impl TryFrom<Vec<VertexId>> for TerminalSet {
    type Error = Error;
    fn try_from(v: Vec<VertexId>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<TerminalSet> for Vec<VertexId> {
    fn from(t: TerminalSet) -> Self {
        t.ids
    }
}

impl fmt::Debug for TerminalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.ids).finish()
    }
}

/// A deficient set together with its neighborhood and vertex-complement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficientSet {
    pub members: VertexSet,
    pub neighbors: VertexSet,
    pub complement: VertexSet,
    pub terminal_count_inside: usize,
    pub terminal_count_outside: usize,
    /// `|U ∩ T| <= |U* ∩ T|`.
    pub is_small: bool,
}

impl DeficientSet {
    /// Returns the profile of `members` if it is deficient for `target`.
    pub fn try_new(
        g: &Graph,
        t: &TerminalSet,
        members: VertexSet,
        target: usize,
    ) -> Option<DeficientSet> {
        let n_u = neighbors(g, &members);
        let complement = members.union(&n_u).complement(g.vertex_count());
        let inside = t.count_in(&members);
        let outside = t.count_in(&complement);
        (inside > 0 && outside > 0 && n_u.len() < target).then_some(DeficientSet {
            members,
            neighbors: n_u,
            complement,
            terminal_count_inside: inside,
            terminal_count_outside: outside,
            is_small: inside <= outside,
        })
    }
}

/// `N(U) = {v ∉ U : v adjacent to some u ∈ U}`.
pub fn neighbors(g: &Graph, u: &VertexSet) -> VertexSet {
    let mut out = VertexSet::new();
    for x in u.iter() {
        for &(w, _) in g.incident(x) {
            if !u.contains(w) {
                out.insert(w);
            }
        }
    }
    out
}

/// `V \ (U ∪ N(U))`.
pub fn vertex_complement(g: &Graph, u: &VertexSet) -> VertexSet {
    u.union(&neighbors(g, u)).complement(g.vertex_count())
}

/// The terminal pair with the fewest openly disjoint paths, ties broken
/// lexicographically. `None` when fewer than two terminals exist.
pub fn weakest_pair(g: &Graph, t: &TerminalSet) -> Option<(VertexId, VertexId, usize)> {
    let mut best: Option<(VertexId, VertexId, usize)> = None;
    for (s, u) in t.pairs() {
        let cap = best.map_or(g.vertex_count(), |b| b.2);
        let k = pair_connectivity_capped(g, s, u, cap);
        if best.is_none_or(|b| k < b.2) {
            best = Some((s, u, k));
            if k == 0 {
                break;
            }
        }
    }
    best
}

/// Largest `l` such that every terminal pair has `l` openly disjoint paths.
/// Vacuously `usize::MAX` for fewer than two terminals.
pub fn subset_connectivity(g: &Graph, t: &TerminalSet) -> usize {
    weakest_pair(g, t).map_or(usize::MAX, |p| p.2)
}

/// First terminal pair (lexicographic) with fewer than `target` openly
/// disjoint paths.
pub fn deficient_pair(
    g: &Graph,
    t: &TerminalSet,
    target: usize,
) -> Option<(VertexId, VertexId, usize)> {
    t.pairs().find_map(|(s, u)| {
        let k = pair_connectivity_capped(g, s, u, target);
        (k < target).then_some((s, u, k))
    })
}

pub fn is_subset_connected(g: &Graph, t: &TerminalSet, k: usize) -> bool {
    deficient_pair(g, t, k).is_none()
}

/// Flow-based test for the existence of a deficient set: true iff some
/// terminal pair has fewer than `target` openly disjoint paths.
pub fn exists_deficient_set(g: &Graph, t: &TerminalSet, target: usize) -> bool {
    target > 0 && deficient_pair(g, t, target).is_some()
}

/// Min over `t ∈ T \ {r}` of the number of openly disjoint `r`-`t` paths.
/// Vacuously `usize::MAX` when `T \ {r}` is empty.
pub fn rooted_connectivity(g: &Graph, r: VertexId, t: &TerminalSet) -> usize {
    let mut best = usize::MAX;
    for u in t.iter().filter(|&u| u != r) {
        let cap = best.min(g.vertex_count());
        best = best.min(pair_connectivity_capped(g, r, u, cap));
        if best == 0 {
            break;
        }
    }
    best
}

/// First terminal (ascending) with fewer than `target` openly disjoint
/// paths from `r`, with its path count.
pub fn rooted_deficient_terminal(
    g: &Graph,
    r: VertexId,
    t: &TerminalSet,
    target: usize,
) -> Option<(VertexId, usize)> {
    t.iter().filter(|&u| u != r).find_map(|u| {
        let k = pair_connectivity_capped(g, r, u, target);
        (k < target).then_some((u, k))
    })
}

/// Every deficient set for `target`, by exhaustive subset scan. Refuses
/// graphs above [`BRUTE_FORCE_BOUND`] vertices.
pub fn enumerate_deficient_sets(
    g: &Graph,
    t: &TerminalSet,
    target: usize,
) -> Result<Vec<DeficientSet>> {
    let mg = MaskGraph::new(g, t)?;
    Ok(mg
        .deficient_masks(target)
        .into_iter()
        .map(|m| {
            DeficientSet::try_new(g, t, MaskGraph::to_set(m), target)
                .expect("mask scan and set profile agree")
        })
        .collect())
}
