//! Exact minimum-cost edge subsets under a monotone feasibility predicate,
//! by branch and bound. Reference oracle for tiny instances.

use serde::{Deserialize, Serialize};

use crate::connectivity::{is_subset_connected, rooted_deficient_terminal, TerminalSet};
use crate::error::{Error, Result};
use crate::graph::{Cost, EdgeId, EdgeSet, Graph, VertexId};

/// Largest number of positive-cost candidate edges searched exhaustively.
pub const EDGE_BOUND: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactOptimum {
    /// Cost of the chosen edges outside the base set.
    pub cost: Cost,
    /// Base edges, zero-cost candidates and the chosen positive-cost edges.
    pub edges: EdgeSet,
}

/// Branching order over positive-cost candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchOrder {
    #[default]
    CheapestFirst,
    CostliestFirst,
}

struct Search<'a, F> {
    g: &'a Graph,
    order: Vec<EdgeId>,
    feasible: F,
    best: Option<(Cost, EdgeSet)>,
}

impl<F: FnMut(&EdgeSet) -> bool> Search<'_, F> {
    fn run(&mut self, idx: usize, current: &mut EdgeSet, cost: Cost) {
        if self.best.as_ref().is_some_and(|b| cost >= b.0) {
            return;
        }
        if (self.feasible)(current) {
            self.best = Some((cost, current.clone()));
            return;
        }
        if idx == self.order.len() {
            return;
        }
        let mut all = current.clone();
        all.extend(self.order[idx..].iter().copied());
        if !(self.feasible)(&all) {
            return;
        }
        let e = self.order[idx];
        current.insert(e);
        self.run(idx + 1, current, cost + self.g.edge(e).cost);
        current.remove(&e);
        self.run(idx + 1, current, cost);
    }
}

/// Cheapest `F ⊆ candidates` such that `feasible(base ∪ F)`, assuming
/// `feasible` is monotone under adding edges. Zero-cost candidates are
/// always taken. `None` when even `base ∪ candidates` is infeasible.
pub fn min_cost_monotone_subset<F>(
    g: &Graph,
    base: &EdgeSet,
    candidates: &EdgeSet,
    order: SearchOrder,
    feasible: F,
) -> Result<Option<ExactOptimum>>
where
    F: FnMut(&EdgeSet) -> bool,
{
    let mut start = base.clone();
    let mut paid: Vec<EdgeId> = Vec::new();
    for &e in candidates.difference(base) {
        if g.edge(e).cost == 0 {
            start.insert(e);
        } else {
            paid.push(e);
        }
    }
    if paid.len() > EDGE_BOUND {
        return Err(Error::TooLarge {
            what: "positive-cost candidate edges",
            size: paid.len(),
            bound: EDGE_BOUND,
        });
    }
    match order {
        SearchOrder::CheapestFirst => paid.sort_by_key(|&e| (g.edge(e).cost, e)),
        SearchOrder::CostliestFirst => {
            paid.sort_by_key(|&e| (std::cmp::Reverse(g.edge(e).cost), e))
        }
    }
    let mut search = Search {
        g,
        order: paid,
        feasible,
        best: None,
    };
    search.run(0, &mut start, 0);
    Ok(search
        .best
        .map(|(cost, edges)| ExactOptimum { cost, edges }))
}

/// Exact cheapest subset `k`-connected edge set containing `base`.
pub fn subset_optimum(
    g: &Graph,
    t: &TerminalSet,
    k: usize,
    base: &EdgeSet,
    order: SearchOrder,
) -> Result<Option<ExactOptimum>> {
    min_cost_monotone_subset(g, base, &g.all_edges(), order, |s| {
        is_subset_connected(&g.subgraph(s), t, k)
    })
}

/// Exact cheapest edge set containing `base` with `k` openly disjoint paths
/// from `root` to every terminal.
pub fn rooted_optimum(
    g: &Graph,
    root: VertexId,
    t: &TerminalSet,
    k: usize,
    base: &EdgeSet,
    order: SearchOrder,
) -> Result<Option<ExactOptimum>> {
    min_cost_monotone_subset(g, base, &g.all_edges(), order, |s| {
        rooted_deficient_terminal(&g.subgraph(s), root, t, k).is_none()
    })
}
