//! Reduction from rooted subset `k`-connectivity to subset
//! `k`-connectivity.
//!
//! The root `r` with neighbours `v_1..v_d` is replaced by a zero-cost
//! clique on `r', v'_1..v'_d`, and each edge `(r, v_i)` by a connector
//! `(v'_i, v_i)` of the same cost. The new terminal set is `T + r'`.

use serde::{Deserialize, Serialize};

use crate::connectivity::{deficient_pair, rooted_deficient_terminal, TerminalSet};
use crate::error::{Error, Result};
use crate::graph::{Cost, EdgeId, EdgeSet, Graph, VertexId};
use crate::solver::Instance;

#[derive(Debug, Clone)]
pub struct RootedInstance {
    pub graph: Graph,
    pub terminals: TerminalSet,
    pub root: VertexId,
    pub k: usize,
}

impl RootedInstance {
    pub fn new(graph: Graph, terminals: TerminalSet, root: VertexId, k: usize) -> Result<Self> {
        let inst = Self {
            graph,
            terminals,
            root,
            k,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidInput("k must be at least 1".into()));
        }
        self.graph.check_vertex(self.root)?;
        self.terminals.validate(&self.graph)?;
        if self.terminals.contains(self.root) {
            return Err(Error::InvalidInput(format!(
                "root {} is a terminal",
                self.root
            )));
        }
        Ok(())
    }

    /// Fails with [`Error::Infeasible`] when `edges` leave some terminal
    /// with fewer than `k` openly disjoint paths from the root.
    pub fn check_solution(&self, edges: &EdgeSet) -> Result<()> {
        let sub = self.graph.subgraph(edges);
        match rooted_deficient_terminal(&sub, self.root, &self.terminals, self.k) {
            Some((t, achievable)) => Err(Error::Infeasible {
                source_vertex: self.root,
                target: t,
                achievable,
                required: self.k,
            }),
            None => Ok(()),
        }
    }
}

/// Correspondence between a rooted instance and its subset image.
///
/// Vertices other than the root keep their ids and the root's id is reused
/// for `r'`. The copies `v'_i` are numbered from the old vertex count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionMap {
    /// `r'` first, then `v'_1..v'_d`.
    pub clique_vertices: Vec<VertexId>,
    /// `v_1..v_d` in ascending order.
    pub root_neighbors: Vec<VertexId>,
    pub clique_edges: EdgeSet,
    /// Rooted edge id to subset edge id. Root edges map to connectors.
    pub edge_image: Vec<EdgeId>,
    /// Subset edge id to rooted edge id, `None` on clique edges.
    pub edge_preimage: Vec<Option<EdgeId>>,
    /// `c(r, v_i)`, equal to the cost of connector `(v'_i, v_i)`.
    pub connector_costs: Vec<Cost>,
}

impl ReductionMap {
    pub fn root_copy(&self) -> VertexId {
        self.clique_vertices[0]
    }

    pub fn degree(&self) -> usize {
        self.root_neighbors.len()
    }
}

/// Builds the subset instance. Requires a non-terminal root of degree at
/// least one.
pub fn rooted_to_subset(rooted: &RootedInstance) -> Result<(Instance, ReductionMap)> {
    rooted.validate()?;
    let g = &rooted.graph;
    let r = rooted.root;
    let n = g.vertex_count();
    let mut root_edges: Vec<(VertexId, EdgeId)> = g.incident(r).to_vec();
    root_edges.sort_unstable();
    let d = root_edges.len();
    if d == 0 {
        return Err(Error::InvalidInput(format!("root {r} is isolated")));
    }

    let mut h = Graph::new(n + d);
    let mut edge_image = vec![0; g.edge_count()];
    let mut edge_preimage = Vec::with_capacity(g.edge_count() + d * (d + 1) / 2);
    let copy = |i: usize| n + i;
    let mut slot = vec![None; g.edge_count()];
    for (i, &(_, e)) in root_edges.iter().enumerate() {
        slot[e] = Some(i);
    }
    for (id, e) in g.edges().iter().enumerate() {
        let new_id = match slot[id] {
            Some(i) => h.add_edge(copy(i), root_edges[i].0, e.cost)?,
            None => h.add_edge(e.u, e.v, e.cost)?,
        };
        edge_image[id] = new_id;
        edge_preimage.push(Some(id));
    }
    let clique_vertices: Vec<VertexId> = std::iter::once(r).chain((0..d).map(copy)).collect();
    let mut clique_edges = EdgeSet::new();
    for (a, &x) in clique_vertices.iter().enumerate() {
        for &y in &clique_vertices[a + 1..] {
            clique_edges.insert(h.add_edge(x, y, 0)?);
            edge_preimage.push(None);
        }
    }

    let mut terminals: Vec<VertexId> = rooted.terminals.as_slice().to_vec();
    terminals.push(r);
    let inst = Instance::new(h, TerminalSet::new(terminals)?, rooted.k)?;
    let map = ReductionMap {
        clique_vertices,
        connector_costs: root_edges.iter().map(|&(_, e)| g.edge(e).cost).collect(),
        root_neighbors: root_edges.into_iter().map(|(v, _)| v).collect(),
        clique_edges,
        edge_image,
        edge_preimage,
    };
    Ok((inst, map))
}

fn check_subset(inst: &Instance, edges: &EdgeSet) -> Result<()> {
    match deficient_pair(&inst.graph.subgraph(edges), &inst.terminals, inst.k) {
        Some((s, t, achievable)) => Err(Error::Infeasible {
            source_vertex: s,
            target: t,
            achievable,
            required: inst.k,
        }),
        None => Ok(()),
    }
}

/// Image of a rooted solution: every clique edge plus the correspondents
/// of `h`. Both the input and the image are checked.
pub fn map_solution_forward(
    rooted: &RootedInstance,
    subset: &Instance,
    map: &ReductionMap,
    h: &EdgeSet,
) -> Result<EdgeSet> {
    rooted.check_solution(h)?;
    let mut image = map.clique_edges.clone();
    image.extend(h.iter().map(|&e| map.edge_image[e]));
    if rooted.graph.cost_of(h) != subset.graph.cost_of(&image) {
        return Err(Error::Internal("forward map changed the cost".into()));
    }
    check_subset(subset, &image)
        .map_err(|e| Error::Internal(format!("forward image is infeasible: {e}")))?;
    Ok(image)
}

/// Preimage of a subset solution: the correspondents of its non-clique
/// edges. Both the input and the preimage are checked.
pub fn map_solution_back(
    rooted: &RootedInstance,
    subset: &Instance,
    map: &ReductionMap,
    h_prime: &EdgeSet,
) -> Result<EdgeSet> {
    check_subset(subset, h_prime)?;
    let back: EdgeSet = h_prime
        .iter()
        .filter_map(|&e| map.edge_preimage[e])
        .collect();
    if rooted.graph.cost_of(&back) != subset.graph.cost_of(h_prime) {
        return Err(Error::Internal("backward map changed the cost".into()));
    }
    rooted
        .check_solution(&back)
        .map_err(|e| Error::Internal(format!("preimage is infeasible: {e}")))?;
    Ok(back)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rooted_optimum, subset_optimum, SearchOrder};
    use crate::fixtures::example_tree;

    fn star(leaves: usize) -> RootedInstance {
        let g = Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v, v as Cost))).unwrap();
        let t = TerminalSet::new((1..=leaves).collect()).unwrap();
        RootedInstance::new(g, t, 0, 1).unwrap()
    }

    #[test]
    fn star_builds_clique_and_connectors() {
        let rooted = star(3);
        let (inst, map) = rooted_to_subset(&rooted).unwrap();
        assert_eq!(inst.graph.vertex_count(), 4 + 3);
        assert_eq!(map.clique_edges.len(), 6);
        assert_eq!(map.connector_costs, vec![1, 2, 3]);
        assert_eq!(inst.terminals.as_slice(), &[0, 1, 2, 3]);
        assert_eq!(
            inst.graph.cost_of(&inst.graph.all_edges()),
            rooted.graph.cost_of(&rooted.graph.all_edges())
        );

        let h = rooted.graph.all_edges();
        let image = map_solution_forward(&rooted, &inst, &map, &h).unwrap();
        assert_eq!(inst.graph.cost_of(&image), 6);
        assert_eq!(map_solution_back(&rooted, &inst, &map, &image).unwrap(), h);
    }

    #[test]
    fn example_tree_vertex_count() {
        let f = example_tree();
        let t = TerminalSet::new(vec![f.t1, f.t2, f.t3, f.t4]).unwrap();
        let rooted = RootedInstance::new(f.graph.clone(), t, f.r, 1).unwrap();
        let (inst, map) = rooted_to_subset(&rooted).unwrap();
        assert_eq!(map.degree(), 3);
        assert_eq!(inst.graph.vertex_count(), f.graph.vertex_count() - 1 + 4);
    }

    #[test]
    fn errors() {
        let f = example_tree();
        assert!(RootedInstance::new(f.graph.clone(), f.terminals.clone(), f.t1, 1).is_err());
        let rooted = star(3);
        let (inst, map) = rooted_to_subset(&rooted).unwrap();
        let no_connectors = map.clique_edges.clone();
        assert!(matches!(
            map_solution_back(&rooted, &inst, &map, &no_connectors),
            Err(Error::Infeasible { .. })
        ));
        assert!(matches!(
            map_solution_forward(&rooted, &inst, &map, &EdgeSet::new()),
            Err(Error::Infeasible { .. })
        ));
    }

    #[test]
    fn optima_agree_on_a_wheel() {
        let mut g = Graph::new(7);
        for v in 1..=6 {
            g.add_edge(0, v, 2).unwrap();
            g.add_edge(v, v % 6 + 1, v as Cost).unwrap();
        }
        let rooted =
            RootedInstance::new(g, TerminalSet::new(vec![2, 4, 5]).unwrap(), 0, 2).unwrap();
        let (inst, map) = rooted_to_subset(&rooted).unwrap();
        let a = rooted_optimum(
            &rooted.graph,
            0,
            &rooted.terminals,
            2,
            &EdgeSet::new(),
            SearchOrder::CheapestFirst,
        )
        .unwrap()
        .unwrap();
        let b = subset_optimum(
            &inst.graph,
            &inst.terminals,
            2,
            &EdgeSet::new(),
            SearchOrder::CheapestFirst,
        )
        .unwrap()
        .unwrap();
        assert_eq!(a.cost, b.cost);
        let back = map_solution_back(&rooted, &inst, &map, &b.edges).unwrap();
        assert_eq!(rooted.graph.cost_of(&back), a.cost);
    }
}
