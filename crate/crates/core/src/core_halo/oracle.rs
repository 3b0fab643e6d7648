use crate::connectivity::{MaskGraph, TerminalSet};
use crate::error::Result;
use crate::graph::{Graph, VertexSet};

use super::{check_level, CoreRecord};

/// Cores, halo-families and halo-sets found by scanning every vertex
/// subset. Masks use bit `v` for vertex `v`.
#[derive(Debug, Clone)]
pub struct OracleStructure {
    pub mask_graph: MaskGraph,
    pub level: usize,
    /// Every deficient set for `ℓ + 1`, ascending.
    pub deficient: Vec<u32>,
    /// The small members of `deficient`.
    pub small: Vec<u32>,
    /// Cores in ascending set order, aligned with `families` and `records`.
    pub cores: Vec<u32>,
    pub families: Vec<Vec<u32>>,
    pub records: Vec<CoreRecord>,
}

impl OracleStructure {
    /// `Halo(C)` as vertex sets ordered by size, then lexicographically.
    pub fn family_of(&self, core: &VertexSet) -> Option<Vec<VertexSet>> {
        let m = MaskGraph::to_mask(core);
        let i = self.cores.iter().position(|&c| c == m)?;
        let mut sets: Vec<VertexSet> = self.families[i]
            .iter()
            .map(|&u| MaskGraph::to_set(u))
            .collect();
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Some(sets)
    }

    /// Smallest number of terminals inside a deficient set.
    pub fn min_deficient_terminals(&self) -> Option<usize> {
        let tm = self.mask_graph.terminal_mask();
        self.deficient
            .iter()
            .map(|&u| (u & tm).count_ones() as usize)
            .min()
    }
}

/// Exhaustive reference for [`super::compute_core_records`]. Fails like
/// the flow version on level mismatch and refuses graphs above the
/// brute-force bound.
pub fn oracle_structure(g: &Graph, t: &TerminalSet, level: usize) -> Result<OracleStructure> {
    let mg = MaskGraph::new(g, t)?;
    check_level(g, t, level)?;
    let deficient = mg.deficient_masks(level + 1);
    let mut small: Vec<u32> = deficient
        .iter()
        .copied()
        .filter(|&u| mg.is_small(u))
        .collect();
    small.sort_by_key(|u| u.count_ones());
    let mut cores: Vec<u32> = Vec::new();
    for &u in &small {
        if !cores.iter().any(|&c| c & !u == 0) {
            cores.push(u);
        }
    }
    cores.sort_by_key(|&c| MaskGraph::to_set(c));
    small.sort_unstable();
    let families: Vec<Vec<u32>> = cores
        .iter()
        .map(|&c| {
            small
                .iter()
                .copied()
                .filter(|&u| c & u == c && cores.iter().all(|&d| d == c || d & u != d))
                .collect()
        })
        .collect();
    let records = cores
        .iter()
        .zip(&families)
        .map(|(&c, fam)| {
            let halo = fam.iter().fold(0u32, |a, &u| a | u);
            let mut r = CoreRecord::new(g, MaskGraph::to_set(c), MaskGraph::to_set(halo));
            r.witness_family_size = Some(fam.len());
            r
        })
        .collect();
    Ok(OracleStructure {
        mask_graph: mg,
        level,
        deficient,
        small,
        cores,
        families,
        records,
    })
}
