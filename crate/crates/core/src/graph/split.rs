use super::flow::{FlowCost, FlowNetwork, INF_CAP};
use super::{EdgeId, EdgeSet, Graph, VertexId, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitNode {
    In(VertexId),
    Out(VertexId),
}

/// Node-splitting transform of an undirected graph.
///
/// Vertex `v` becomes `v_in -> v_out` with capacity 1, or unbounded capacity
/// when `v` is uncuttable. Edge `(u, v)` becomes the arcs `u_out -> v_in` and
/// `v_out -> u_in`.
///
/// Two arc regimes are used. Cut probes give edge arcs unbounded capacity so
/// that every finite cut crosses internal arcs only and maps one-to-one to a
/// vertex set. Cost flows give edge arcs capacity 1 and the edge cost, so a
/// unit of flow pays for every edge it uses.
#[derive(Debug, Clone)]
pub struct SplitDigraph {
    pub(crate) net: FlowNetwork,
    vertex_count: usize,
    uncuttable: VertexSet,
    edge_arcs: Vec<Option<[usize; 2]>>,
    edge_ends: Vec<(VertexId, VertexId)>,
}

impl SplitDigraph {
    /// Split digraph for cut queries. `skip` drops one edge, used to count a
    /// direct `s`-`t` edge separately.
    pub fn for_cuts(g: &Graph, uncuttable: &VertexSet, skip: Option<EdgeId>) -> Self {
        Self::build(g, uncuttable, skip, None)
    }

    /// Split digraph for min-cost flows. Edges in `free` cost nothing.
    pub fn for_costs(g: &Graph, uncuttable: &VertexSet, free: &EdgeSet) -> Self {
        Self::build(g, uncuttable, None, Some(free))
    }

    fn build(
        g: &Graph,
        uncuttable: &VertexSet,
        skip: Option<EdgeId>,
        costs: Option<&EdgeSet>,
    ) -> Self {
        let n = g.vertex_count();
        let mut net = FlowNetwork::new(2 * n);
        for v in 0..n {
            let cap = if uncuttable.contains(v) { INF_CAP } else { 1 };
            net.add_arc(2 * v, 2 * v + 1, cap, 0);
        }
        let mut edge_arcs = Vec::with_capacity(g.edge_count());
        for (id, e) in g.edges().iter().enumerate() {
            if Some(id) == skip {
                edge_arcs.push(None);
                continue;
            }
            let (cap, cost) = match costs {
                None => (INF_CAP, 0),
                Some(free) if free.contains(&id) => (1, 0),
                Some(_) => (1, e.cost as FlowCost),
            };
            let a = net.add_arc(2 * e.u + 1, 2 * e.v, cap, cost);
            let b = net.add_arc(2 * e.v + 1, 2 * e.u, cap, cost);
            edge_arcs.push(Some([a, b]));
        }
        Self {
            net,
            vertex_count: n,
            uncuttable: uncuttable.clone(),
            edge_arcs,
            edge_ends: g.edges().iter().map(|e| (e.u, e.v)).collect(),
        }
    }

    pub fn node(&self, n: SplitNode) -> usize {
        match n {
            SplitNode::In(v) => 2 * v,
            SplitNode::Out(v) => 2 * v + 1,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn is_uncuttable(&self, v: VertexId) -> bool {
        self.uncuttable.contains(v)
    }

    pub(crate) fn edge_arcs(&self, e: EdgeId) -> Option<[usize; 2]> {
        self.edge_arcs[e]
    }

    /// Vertices whose finite internal arc leaves the node set `reachable`.
    pub fn crossed_vertices(&self, reachable: &[bool]) -> VertexSet {
        (0..self.vertex_count)
            .filter(|&v| !self.uncuttable.contains(v) && reachable[2 * v] && !reachable[2 * v + 1])
            .collect()
    }

    /// Recovers the undirected graph by contracting every internal arc.
    pub fn collapse(&self) -> Graph {
        let mut g = Graph::new(self.vertex_count);
        for (id, arcs) in self.edge_arcs.iter().enumerate() {
            if let Some([a, _]) = arcs {
                let (u, v) = self.edge_ends[id];
                debug_assert_eq!(self.net.tail(*a), 2 * u + 1);
                debug_assert_eq!(self.net.head(*a), 2 * v);
                let cost = self.net.arc_cost(*a).max(0) as u64;
                g.add_edge(u, v, cost)
                    .expect("split digraph of a simple graph");
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collapse_round_trips() {
        let g =
            Graph::from_edges(5, [(0, 1, 3), (1, 2, 4), (2, 3, 1), (3, 4, 9), (0, 4, 2)]).unwrap();
        let split = SplitDigraph::for_costs(&g, &VertexSet::new(), &EdgeSet::new());
        let back = split.collapse();
        assert_eq!(back.edges(), g.edges());
        let cut_split = SplitDigraph::for_cuts(&g, &VertexSet::singleton(0), None);
        let back = cut_split.collapse();
        assert_eq!(back.edge_count(), g.edge_count());
        for e in g.edges() {
            assert!(back.are_adjacent(e.u, e.v));
        }
    }

    #[test]
    fn finite_internal_arcs_map_to_vertices() {
        // path 0 - 1 - 2: the only finite cut between 0 and 2 is vertex 1
        let g = Graph::from_edges(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let ends: VertexSet = [0, 2].into_iter().collect();
        let mut split = SplitDigraph::for_cuts(&g, &ends, None);
        let (s, t) = (split.node(SplitNode::Out(0)), split.node(SplitNode::In(2)));
        assert_eq!(split.net.max_flow(s, t, INF_CAP), 1);
        let reach = split.net.residual_reachable(s);
        assert_eq!(split.crossed_vertices(&reach), VertexSet::singleton(1));
    }
}
