//! Undirected edge-costed graphs and the vertex-capacitated flow primitives
//! every connectivity query is built on.

mod flow;
mod paths;
mod split;
mod vertex_set;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use paths::pair_connectivity_capped;
pub use paths::{
    max_openly_disjoint_paths, min_cost_disjoint_paths, min_cut_side, pair_connectivity,
    separator_probe, CutProbe, PathBundle, PathPurchase,
};
pub use split::{SplitDigraph, SplitNode};
pub use vertex_set::VertexSet;

pub type VertexId = usize;
pub type EdgeId = usize;

/// Edge costs are exact non-negative integers; rational inputs are scaled.
pub type Cost = u64;

/// A set of edge ids, always iterated in ascending order.
pub type EdgeSet = BTreeSet<EdgeId>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub cost: Cost,
}

impl Edge {
    /// The endpoint opposite to `x`.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    fn key(&self) -> (VertexId, VertexId) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// Simple undirected graph on the dense vertex range `0..vertex_count`.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    index: HashMap<(VertexId, VertexId), EdgeId>,
}

impl Graph {
    pub fn new(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); vertex_count],
            index: HashMap::new(),
        }
    }

    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, Cost)>,
    {
        let mut g = Self::new(vertex_count);
        for (u, v, c) in edges {
            g.add_edge(u, v, c)?;
        }
        Ok(g)
    }

    /// Adds a vertex and returns its id.
    pub fn add_vertex(&mut self) -> VertexId {
        self.adjacency.push(Vec::new());
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, cost: Cost) -> Result<EdgeId> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let edge = Edge { u, v, cost };
        if self.index.contains_key(&edge.key()) {
            return Err(Error::DuplicateEdge(u, v));
        }
        let id = self.edges.len();
        self.index.insert(edge.key(), id);
        self.edges.push(edge);
        self.adjacency[u].push((v, id));
        self.adjacency[v].push((u, id));
        Ok(id)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                vertex_count: self.vertex_count,
            })
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    /// Neighbors of `v` with the connecting edge id, in insertion order.
    pub fn incident(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn are_adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.find_edge(u, v).is_some()
    }

    pub fn all_edges(&self) -> EdgeSet {
        (0..self.edges.len()).collect()
    }

    /// Total cost of `edges`.
    pub fn cost_of(&self, edges: &EdgeSet) -> Cost {
        edges.iter().map(|&e| self.edges[e].cost).sum()
    }

    /// Total cost of the members of `edges` that are not in `free`.
    pub fn cost_excluding(&self, edges: &EdgeSet, free: &EdgeSet) -> Cost {
        edges
            .iter()
            .filter(|e| !free.contains(e))
            .map(|&e| self.edges[e].cost)
            .sum()
    }

    /// The spanning subgraph `(V, edges)`. Edge ids are renumbered in
    /// ascending order of the original ids.
    pub fn subgraph(&self, edges: &EdgeSet) -> Graph {
        let mut g = Graph::new(self.vertex_count);
        for &e in edges {
            let Edge { u, v, cost } = self.edges[e];
            g.add_edge(u, v, cost).expect("subgraph of a simple graph");
        }
        g
    }

    /// Sorted adjacency of `v` as a vertex set.
    pub fn neighbor_set(&self, v: VertexId) -> VertexSet {
        self.adjacency[v].iter().map(|&(w, _)| w).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_duplicates() {
        let mut g = Graph::new(3);
        g.add_edge(0, 1, 2).unwrap();
        assert_eq!(g.add_edge(1, 0, 5), Err(Error::DuplicateEdge(1, 0)));
        assert_eq!(g.add_edge(2, 2, 1), Err(Error::SelfLoop(2)));
        assert!(matches!(
            g.add_edge(0, 3, 1),
            Err(Error::InvalidVertex { vertex: 3, .. })
        ));
    }

    #[test]
    fn subgraph_keeps_vertices() {
        let g = Graph::from_edges(4, [(0, 1, 1), (1, 2, 2), (2, 3, 3)]).unwrap();
        let h = g.subgraph(&[0, 2].into_iter().collect());
        assert_eq!(h.vertex_count(), 4);
        assert_eq!(h.edge_count(), 2);
        assert!(h.are_adjacent(2, 3));
        assert!(!h.are_adjacent(1, 2));
        assert_eq!(g.cost_of(&g.all_edges()), 6);
    }
}
