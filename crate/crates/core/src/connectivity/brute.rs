use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

use super::TerminalSet;

/// Largest vertex count accepted by exhaustive subset scans.
pub const BRUTE_FORCE_BOUND: usize = 18;

/// Bitmask view of a small graph for exhaustive subset enumeration.
///
/// Precomputes the closed neighborhood union of every vertex subset, so
/// `N(U)` and `U*` are O(1) per subset.
#[derive(Debug, Clone)]
pub struct MaskGraph {
    n: usize,
    terminals: u32,
    reach: Vec<u32>,
}

impl MaskGraph {
    pub fn new(g: &Graph, t: &TerminalSet) -> Result<Self> {
        Self::with_bound(g, t, BRUTE_FORCE_BOUND)
    }

    pub fn with_bound(g: &Graph, t: &TerminalSet, bound: usize) -> Result<Self> {
        let n = g.vertex_count();
        if n > bound.min(31) {
            return Err(Error::TooLarge {
                what: "vertex count",
                size: n,
                bound: bound.min(31),
            });
        }
        let adj: Vec<u32> = (0..n)
            .map(|v| g.incident(v).iter().fold(0u32, |m, &(w, _)| m | 1 << w))
            .collect();
        let mut reach = vec![0u32; 1 << n];
        for mask in 1usize..1 << n {
            let low = mask.trailing_zeros() as usize;
            reach[mask] = reach[mask & (mask - 1)] | adj[low];
        }
        let terminals = t.iter().fold(0u32, |m, v| m | 1 << v);
        Ok(Self {
            n,
            terminals,
            reach,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn all(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    pub fn terminal_mask(&self) -> u32 {
        self.terminals
    }

    pub fn neighbors(&self, mask: u32) -> u32 {
        self.reach[mask as usize] & !mask
    }

    /// `V \ (U ∪ N(U))`.
    pub fn complement(&self, mask: u32) -> u32 {
        self.all() & !(mask | self.reach[mask as usize])
    }

    pub fn is_deficient(&self, mask: u32, target: usize) -> bool {
        mask & self.terminals != 0
            && self.complement(mask) & self.terminals != 0
            && (self.neighbors(mask).count_ones() as usize) < target
    }

    pub fn is_small(&self, mask: u32) -> bool {
        (mask & self.terminals).count_ones()
            <= (self.complement(mask) & self.terminals).count_ones()
    }

    /// Every deficient subset, in increasing mask order.
    pub fn deficient_masks(&self, target: usize) -> Vec<u32> {
        if target == 0 {
            return Vec::new();
        }
        (1..=self.all())
            .filter(|&m| self.is_deficient(m, target))
            .collect()
    }

    pub fn to_set(mask: u32) -> VertexSet {
        VertexSet::from_mask(mask as u64)
    }

    pub fn to_mask(set: &VertexSet) -> u32 {
        set.to_mask().expect("vertex set below 64") as u32
    }
}
