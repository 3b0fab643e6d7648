use serde::{Deserialize, Serialize};

use crate::connectivity::TerminalSet;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, Graph};

/// A subset `k`-connectivity instance. `purchased` edges are owned
/// already: they cost nothing and always belong to the solution.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub terminals: TerminalSet,
    pub k: usize,
    pub purchased: EdgeSet,
}

impl Instance {
    pub fn new(graph: Graph, terminals: TerminalSet, k: usize) -> Result<Self> {
        Self::with_purchased(graph, terminals, k, EdgeSet::new())
    }

    pub fn with_purchased(
        graph: Graph,
        terminals: TerminalSet,
        k: usize,
        purchased: EdgeSet,
    ) -> Result<Self> {
        let inst = Self {
            graph,
            terminals,
            k,
            purchased,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidInput("k must be at least 1".into()));
        }
        if self.terminals.len() < 2 {
            return Err(Error::InvalidInput("need at least two terminals".into()));
        }
        self.terminals.validate(&self.graph)?;
        if let Some(&e) = self
            .purchased
            .iter()
            .find(|&&e| e >= self.graph.edge_count())
        {
            return Err(Error::InvalidInput(format!(
                "purchased edge {e} out of range"
            )));
        }
        Ok(())
    }

    /// Edges joining two terminals.
    pub fn terminal_edges(&self) -> Vec<EdgeId> {
        self.graph
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| self.terminals.contains(e.u) && self.terminals.contains(e.v))
            .map(|(id, _)| id)
            .collect()
    }

    /// Replaces every terminal-terminal edge `(s, t)` by a path `s - x - t`
    /// through a fresh vertex, splitting the cost as `⌊c/2⌋ + ⌈c/2⌉`.
    ///
    /// The half at `s` keeps the original edge id; the half at `t` is
    /// appended after all original edges.
    pub fn subdivide(&self) -> (Instance, Subdivision) {
        let split = self.terminal_edges();
        let n = self.graph.vertex_count();
        let m = self.graph.edge_count();
        let mut g = Graph::new(n + split.len());
        let mut mid = vec![None; m];
        for (j, &e) in split.iter().enumerate() {
            mid[e] = Some(n + j);
        }
        for (id, e) in self.graph.edges().iter().enumerate() {
            let (v, cost) = match mid[id] {
                Some(x) => (x, e.cost / 2),
                None => (e.v, e.cost),
            };
            g.add_edge(e.u, v, cost)
                .expect("subdivision keeps the graph simple");
        }
        let mut halves = Vec::with_capacity(split.len());
        for (j, &e) in split.iter().enumerate() {
            let orig = self.graph.edge(e);
            let second = g
                .add_edge(n + j, orig.v, orig.cost - orig.cost / 2)
                .expect("fresh vertex");
            halves.push((e, second));
        }
        let mut purchased = self.purchased.clone();
        for &(first, second) in &halves {
            if purchased.contains(&first) {
                purchased.insert(second);
            }
        }
        let inst = Instance {
            graph: g,
            terminals: self.terminals.clone(),
            k: self.k,
            purchased,
        };
        (
            inst,
            Subdivision {
                original_edges: m,
                halves,
            },
        )
    }
}

/// Record of a terminal-edge subdivision, for mapping solutions back.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subdivision {
    pub original_edges: usize,
    /// `(first half = original id, second half)` per subdivided edge.
    pub halves: Vec<(EdgeId, EdgeId)>,
}

impl Subdivision {
    pub fn is_identity(&self) -> bool {
        self.halves.is_empty()
    }

    /// Maps a solution of the subdivided graph to original edge ids. A
    /// subdivided edge survives iff both halves are chosen; a lone half
    /// ends at a vertex of degree one and carries no path.
    pub fn lift(&self, edges: &EdgeSet) -> EdgeSet {
        let mut out: EdgeSet = edges
            .iter()
            .copied()
            .filter(|&e| e < self.original_edges)
            .collect();
        for &(first, second) in &self.halves {
            if !(edges.contains(&first) && edges.contains(&second)) {
                out.remove(&first);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::subset_connectivity;

    #[test]
    fn subdivision_splits_costs_and_lifts() {
        let g = Graph::from_edges(3, [(0, 1, 5), (1, 2, 1), (0, 2, 3)]).unwrap();
        let t = TerminalSet::new(vec![0, 2]).unwrap();
        let inst = Instance::with_purchased(g, t, 2, [2].into_iter().collect()).unwrap();
        let (sub, map) = inst.subdivide();
        assert_eq!(sub.graph.vertex_count(), 4);
        assert_eq!(sub.graph.edge(2).cost + sub.graph.edge(3).cost, 3);
        assert_eq!(sub.purchased, [2, 3].into_iter().collect());
        assert!(!sub.graph.are_adjacent(0, 2));
        assert_eq!(subset_connectivity(&sub.graph, &sub.terminals), 2);
        assert_eq!(
            map.lift(&[0, 1, 2, 3].into_iter().collect()),
            [0, 1, 2].into_iter().collect()
        );
        assert_eq!(
            map.lift(&[0, 1, 2].into_iter().collect()),
            [0, 1].into_iter().collect()
        );
    }

    #[test]
    fn rejects_bad_instances() {
        let g = Graph::from_edges(3, [(0, 1, 1)]).unwrap();
        let t = TerminalSet::new(vec![0, 2]).unwrap();
        assert!(Instance::new(g.clone(), t.clone(), 0).is_err());
        assert!(Instance::new(g.clone(), TerminalSet::new(vec![0]).unwrap(), 1).is_err());
        assert!(Instance::new(g.clone(), TerminalSet::new(vec![0, 3]).unwrap(), 1).is_err());
        assert!(Instance::with_purchased(g, t, 1, [4].into_iter().collect()).is_err());
    }
}
