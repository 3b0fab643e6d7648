use serde::{Deserialize, Serialize};

use crate::connectivity::TerminalSet;
use crate::graph::{pair_connectivity, EdgeSet, Graph, VertexId};

/// Achieved connectivity of one terminal pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub s: VertexId,
    pub t: VertexId,
    pub connectivity: usize,
}

/// Per-pair connectivity of a solution, passing iff every pair reaches `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub k: usize,
    pub pairs: Vec<PairRecord>,
    pub pass: bool,
    /// First pair below `k`.
    pub witness: Option<(VertexId, VertexId)>,
}

impl Certificate {
    pub fn min_connectivity(&self) -> Option<usize> {
        self.pairs.iter().map(|p| p.connectivity).min()
    }
}

/// Checks subset `k`-connectivity of `(V, solution)` pair by pair.
pub fn certify(g: &Graph, solution: &EdgeSet, t: &TerminalSet, k: usize) -> Certificate {
    let sub = g.subgraph(solution);
    let pairs: Vec<PairRecord> = t
        .pairs()
        .map(|(s, u)| PairRecord {
            s,
            t: u,
            connectivity: pair_connectivity(&sub, s, u).expect("terminals are distinct vertices"),
        })
        .collect();
    let witness = pairs
        .iter()
        .find(|p| p.connectivity < k)
        .map(|p| (p.s, p.t));
    Certificate {
        k,
        pass: witness.is_none(),
        pairs,
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example_tree;

    #[test]
    fn full_tree_passes_one_fails_two() {
        let f = example_tree();
        let all = f.graph.all_edges();
        let one = certify(&f.graph, &all, &f.terminals, 1);
        assert!(one.pass);
        assert_eq!(one.pairs.len(), 6);
        let two = certify(&f.graph, &all, &f.terminals, 2);
        assert!(!two.pass);
        assert_eq!(two.witness, Some((f.t1, f.t2)));
        let empty = certify(&f.graph, &EdgeSet::new(), &f.terminals, 1);
        assert_eq!(empty.min_connectivity(), Some(0));
        assert!(!empty.pass);
    }
}
