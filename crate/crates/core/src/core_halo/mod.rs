//! Cores, halo-families, halo-sets and terminal thickness of a subset
//! `ℓ`-connected graph.
//!
//! All sets here are deficient with respect to `ℓ + 1`. A core is an
//! inclusion-minimal small deficient set, `Halo(C)` is the family of small
//! deficient sets containing `C` and no other core, and `H(C)` is its union.
//!
//! Cores and halo-sets are computed exactly with flow probes:
//!
//! * every core is the inclusion-minimal `s`-side of a minimum `s`-`t`
//!   separator for some terminal pair, so cores are the minimal members of
//!   the small minimal sides over all ordered pairs;
//! * `v ∈ H(C)` iff for some terminal `t` the minimal side `Y` of a minimum
//!   separator between `C ∪ {v}` and `t` has `|N(Y)| = ℓ`, is small and
//!   contains no other core. Any member of `Halo(C)` containing `v` with `t`
//!   in its complement contains that `Y`.

mod oracle;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::connectivity::{neighbors, vertex_complement, DeficientSet, TerminalSet};
use crate::error::{Error, Result};
use crate::graph::{min_cut_side, separator_probe, Graph, VertexId, VertexSet};

pub use oracle::{oracle_structure, OracleStructure};

/// A core with its halo-set `H(C)`, `N(H(C))` and `H(C)*`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreRecord {
    pub core: VertexSet,
    pub halo_set: VertexSet,
    pub halo_neighbors: VertexSet,
    pub halo_complement: VertexSet,
    /// Size of `Halo(C)`, known only when computed by enumeration.
    pub witness_family_size: Option<usize>,
}

impl CoreRecord {
    fn new(g: &Graph, core: VertexSet, halo_set: VertexSet) -> Self {
        let halo_neighbors = neighbors(g, &halo_set);
        let halo_complement = vertex_complement(g, &halo_set);
        Self {
            core,
            halo_set,
            halo_neighbors,
            halo_complement,
            witness_family_size: None,
        }
    }

    /// `r` hits `Halo(C)` when `r ∈ C` or `r ∈ H(C)*`.
    pub fn is_hit_by(&self, r: VertexId) -> bool {
        self.core.contains(r) || self.halo_complement.contains(r)
    }
}

/// True iff some `r ∈ s` hits the halo-family of `record`.
pub fn hits(s: &VertexSet, record: &CoreRecord) -> bool {
    s.iter().any(|r| record.is_hit_by(r))
}

/// `u` contains `core` and no other member of `all_cores`.
pub fn halo_family_member(u: &DeficientSet, core: &VertexSet, all_cores: &[VertexSet]) -> bool {
    core.is_subset(&u.members)
        && all_cores
            .iter()
            .all(|d| d == core || !d.is_subset(&u.members))
}

/// Checks that terminals are pairwise non-adjacent and the graph is subset
/// `ℓ`-connected. Returns false when it is even `(ℓ + 1)`-connected, so no
/// deficient set exists.
fn check_level(g: &Graph, t: &TerminalSet, level: usize) -> Result<bool> {
    if let Some((s, u)) = t.pairs().find(|&(s, u)| g.are_adjacent(s, u)) {
        return Err(Error::InvalidInput(format!(
            "terminals {s} and {u} are adjacent"
        )));
    }
    let actual = crate::connectivity::subset_connectivity(g, t);
    if actual < level {
        return Err(Error::ConnectivityMismatch {
            expected: level,
            actual,
        });
    }
    Ok(actual == level)
}

/// Minimal side of a min `s`-`t` separator when it is a small deficient set
/// for `ℓ + 1`.
fn small_minimal_side(
    g: &Graph,
    t: &TerminalSet,
    level: usize,
    s: VertexId,
    u: VertexId,
) -> Result<Option<VertexSet>> {
    let (cut, side) = min_cut_side(g, s, u)?;
    if cut.len() != level {
        return Ok(None);
    }
    let inside = t.count_in(&side);
    let outside = t.count_in(&vertex_complement(g, &side));
    Ok((inside <= outside).then_some(side))
}

/// The exact cores of a subset `ℓ`-connected graph, sorted.
///
/// Fails with [`Error::ConnectivityMismatch`] when the subset connectivity
/// of `g` is below `level`; empty when it is above.
pub fn compute_cores(g: &Graph, t: &TerminalSet, level: usize) -> Result<Vec<VertexSet>> {
    if !check_level(g, t, level)? {
        return Ok(Vec::new());
    }
    let mut candidates: Vec<VertexSet> = Vec::new();
    for s in t.iter() {
        for u in t.iter().filter(|&u| u != s) {
            if let Some(side) = small_minimal_side(g, t, level, s, u)? {
                candidates.push(side);
            }
        }
    }
    candidates.sort_by_key(|c| c.len());
    candidates.dedup();
    let mut cores: Vec<VertexSet> = Vec::new();
    for c in candidates {
        if !cores.iter().any(|d| d.is_subset(&c)) {
            cores.push(c);
        }
    }
    cores.sort();
    Ok(cores)
}

/// Halo-set of `core` among `all_cores`.
///
/// Fails with [`Error::NotACore`] when `core` is not listed, and with
/// [`Error::Internal`] if `|N(H(C))| > ℓ`, which the exact construction
/// rules out.
pub fn compute_halo_set(
    g: &Graph,
    t: &TerminalSet,
    level: usize,
    core: &VertexSet,
    all_cores: &[VertexSet],
) -> Result<CoreRecord> {
    if !all_cores.contains(core) {
        return Err(Error::NotACore);
    }
    let mut halo = core.clone();
    for v in 0..g.vertex_count() {
        if halo.contains(v) {
            continue;
        }
        let mut sources = core.clone();
        sources.insert(v);
        let reach = sources.union(&neighbors(g, &sources));
        for sink in t.iter().filter(|&x| !reach.contains(x)) {
            let probe = separator_probe(g, &sources, sink, level + 1)?;
            let Some(side) = probe.side.filter(|_| probe.value == level) else {
                continue;
            };
            let small = t.count_in(&side) <= t.count_in(&vertex_complement(g, &side));
            let lone = all_cores.iter().all(|d| d == core || !d.is_subset(&side));
            if small && lone {
                halo.union_with(&side);
                break;
            }
        }
    }
    let record = CoreRecord::new(g, core.clone(), halo);
    if record.halo_neighbors.len() > level {
        return Err(Error::Internal(format!(
            "halo-set {} of core {} has {} neighbors, above {level}",
            record.halo_set,
            record.core,
            record.halo_neighbors.len()
        )));
    }
    Ok(record)
}

/// Cores with their halo-sets, in core order.
pub fn compute_core_records(g: &Graph, t: &TerminalSet, level: usize) -> Result<Vec<CoreRecord>> {
    let cores = compute_cores(g, t, level)?;
    cores
        .iter()
        .map(|c| compute_halo_set(g, t, level, c, &cores))
        .collect()
}

/// Per-terminal thickness: the number of records with the terminal in
/// `N(H(C))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThicknessTable {
    pub counts: BTreeMap<VertexId, usize>,
    /// Number of halo-families counted.
    pub families: usize,
}

impl ThicknessTable {
    pub fn get(&self, t: VertexId) -> usize {
        self.counts.get(&t).copied().unwrap_or(0)
    }

    /// Terminal of minimum thickness, lowest id first.
    pub fn min_terminal(&self) -> Option<(VertexId, usize)> {
        self.counts
            .iter()
            .min_by_key(|&(&t, &c)| (c, t))
            .map(|(&t, &c)| (t, c))
    }
}

pub fn thickness_table<'a, I>(records: I, t: &TerminalSet) -> ThicknessTable
where
    I: IntoIterator<Item = &'a CoreRecord>,
{
    let mut counts: BTreeMap<VertexId, usize> = t.iter().map(|v| (v, 0)).collect();
    let mut families = 0;
    for r in records {
        families += 1;
        for v in r.halo_neighbors.iter() {
            if let Some(c) = counts.get_mut(&v) {
                *c += 1;
            }
        }
    }
    ThicknessTable { counts, families }
}

/// Largest number of halo-sets sharing one terminal.
pub fn max_halo_membership(records: &[CoreRecord], t: &TerminalSet) -> usize {
    t.iter()
        .map(|v| records.iter().filter(|r| r.halo_set.contains(v)).count())
        .max()
        .unwrap_or(0)
}
