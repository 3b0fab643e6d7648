//! Named small graphs shared by tests, generators and examples.

use crate::connectivity::TerminalSet;
use crate::graph::{Graph, VertexId};

/// The padded tree: a root `r` with three branches `r-v1`, `r-v2-v3`,
/// `r-v4`, where `v1` carries leaves `t1, t2`, `v3` carries `t3` and `v4`
/// carries `t4`. Every edge has cost 1.
#[derive(Debug, Clone)]
pub struct ExampleTree {
    pub graph: Graph,
    pub terminals: TerminalSet,
    pub r: VertexId,
    pub v1: VertexId,
    pub v2: VertexId,
    pub v3: VertexId,
    pub v4: VertexId,
    pub t1: VertexId,
    pub t2: VertexId,
    pub t3: VertexId,
    pub t4: VertexId,
}

/// Tree edges in insertion order.
pub const EXAMPLE_TREE_EDGES: [(VertexId, VertexId); 8] = [
    (0, 1),
    (1, 5),
    (1, 6),
    (0, 2),
    (2, 3),
    (3, 7),
    (0, 4),
    (4, 8),
];

pub fn example_tree() -> ExampleTree {
    let graph = Graph::from_edges(9, EXAMPLE_TREE_EDGES.iter().map(|&(u, v)| (u, v, 1)))
        .expect("static tree");
    ExampleTree {
        graph,
        terminals: TerminalSet::new(vec![5, 6, 7, 8]).expect("static terminals"),
        r: 0,
        v1: 1,
        v2: 2,
        v3: 3,
        v4: 4,
        t1: 5,
        t2: 6,
        t3: 7,
        t4: 8,
    }
}

/// Complete graph on `n` vertices with unit costs.
pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b, 1))))
        .expect("complete graph")
}
