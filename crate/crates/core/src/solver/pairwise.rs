use serde::{Deserialize, Serialize};

use crate::connectivity::deficient_pair;
use crate::error::{Error, Result};
use crate::graph::{min_cost_disjoint_paths, Cost, EdgeSet, VertexId};
use crate::rooted::{root_pad, RootedStrategy};

use super::Instance;

/// Union over terminal pairs, in ascending order, of min-cost `k` openly
/// disjoint paths, where purchased and previously bought edges are free.
/// Returns the purchased edges plus everything bought.
pub fn trivial_pairwise(inst: &Instance) -> Result<EdgeSet> {
    let mut owned = inst.purchased.clone();
    for (s, t) in inst.terminals.pairs() {
        let bought = min_cost_disjoint_paths(&inst.graph, s, t, inst.k, &owned)?;
        owned.extend(bought.edges);
    }
    Ok(owned)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionTrace {
    pub root_set: Vec<VertexId>,
    pub base_cost: Cost,
    pub rooted_cost: Cost,
}

/// Solves the instance restricted to the first `k` terminals with `base`,
/// then pads a root to those terminals and raises its rooted connectivity
/// to `k` towards all terminals. With `|T| <= k` this is `base` alone.
pub fn compose_small_t_solver(
    inst: &Instance,
    base: &dyn Fn(&Instance) -> Result<EdgeSet>,
    strategy: &dyn RootedStrategy,
) -> Result<(EdgeSet, CompositionTrace)> {
    let t = &inst.terminals;
    let k = inst.k;
    if t.len() <= k {
        let edges = base(inst)?;
        let trace = CompositionTrace {
            root_set: t.as_slice().to_vec(),
            base_cost: inst.graph.cost_excluding(&edges, &inst.purchased),
            rooted_cost: 0,
        };
        return Ok((edges, trace));
    }
    let r_set = t.prefix(k)?;
    let sub_inst = Instance {
        graph: inst.graph.clone(),
        terminals: r_set.clone(),
        k,
        purchased: inst.purchased.clone(),
    };
    let mut owned = base(&sub_inst)?;
    let base_cost = inst.graph.cost_excluding(&owned, &inst.purchased);
    let padded = root_pad(&inst.graph, &owned, t, &r_set, k, strategy)?;
    owned.extend(padded.new_edges);
    if let Some((s, u, have)) = deficient_pair(&inst.graph.subgraph(&owned), t, k) {
        return Err(Error::Internal(format!(
            "composition leaves terminals {s} and {u} with {have} paths, below {k}"
        )));
    }
    let trace = CompositionTrace {
        root_set: r_set.as_slice().to_vec(),
        base_cost,
        rooted_cost: padded.cost,
    };
    Ok((owned, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::{is_subset_connected, TerminalSet};
    use crate::graph::Graph;
    use crate::rooted::PerTerminal;

    fn wheel() -> Graph {
        // hub 0, rim 1..=6, plus costlier chords
        let mut g = Graph::new(7);
        for v in 1..=6 {
            g.add_edge(0, v, 2).unwrap();
            g.add_edge(v, v % 6 + 1, 1).unwrap();
        }
        g.add_edge(1, 4, 5).unwrap();
        g
    }

    #[test]
    fn two_terminals_get_one_flow() {
        let g = wheel();
        let inst = Instance::new(g.clone(), TerminalSet::new(vec![1, 4]).unwrap(), 2).unwrap();
        let edges = trivial_pairwise(&inst).unwrap();
        let direct = min_cost_disjoint_paths(&g, 1, 4, 2, &EdgeSet::new()).unwrap();
        assert_eq!(edges, direct.edges);
    }

    #[test]
    fn composition_covers_extra_terminals() {
        let g = wheel();
        let t = TerminalSet::new(vec![1, 3, 5]).unwrap();
        let inst = Instance::new(g.clone(), t.clone(), 2).unwrap();
        let (edges, trace) =
            compose_small_t_solver(&inst, &trivial_pairwise, &PerTerminal).unwrap();
        assert!(is_subset_connected(&g.subgraph(&edges), &t, 2));
        assert_eq!(trace.root_set, vec![1, 3]);
        let exact = Instance::new(g, TerminalSet::new(vec![1, 3]).unwrap(), 2).unwrap();
        let (same, trace) =
            compose_small_t_solver(&exact, &trivial_pairwise, &PerTerminal).unwrap();
        assert_eq!(same, trivial_pairwise(&exact).unwrap());
        assert_eq!(trace.rooted_cost, 0);
    }
}
