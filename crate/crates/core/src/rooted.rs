//! Rooted subset connectivity augmentation behind a strategy interface,
//! and root padding.
//!
//! A strategy proposes edges; [`augment_rooted`] checks feasibility up
//! front and re-verifies the rooted connectivity of every proposal before
//! accepting it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::connectivity::{rooted_connectivity, rooted_deficient_terminal, TerminalSet};
use crate::error::{Error, Result};
use crate::exact::{rooted_optimum, SearchOrder};
use crate::graph::{min_cost_disjoint_paths, Cost, EdgeSet, Graph, VertexId};

/// Largest vertex count accepted by the exhaustive strategy.
pub const ORACLE_VERTEX_BOUND: usize = 12;

/// Raise the rooted connectivity from `root` to `terminals` to
/// `target_level`, treating `purchased` as already paid for.
///
/// `target_level` is usually `current_level + 1`; root padding and
/// composition may ask for a larger jump.
#[derive(Debug, Clone, Copy)]
pub struct RootedAugmentRequest<'a> {
    pub graph: &'a Graph,
    pub purchased: &'a EdgeSet,
    pub root: VertexId,
    pub terminals: &'a TerminalSet,
    pub current_level: usize,
    pub target_level: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentResult {
    /// Newly bought edges, disjoint from the purchased set.
    pub new_edges: EdgeSet,
    pub cost: Cost,
    pub strategy_name: String,
}

pub trait RootedStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    /// Edges whose union with `req.purchased` meets the target. May include
    /// purchased edges.
    fn augment(&self, req: &RootedAugmentRequest<'_>) -> Result<EdgeSet>;
}

/// Buys `target_level` min-cost openly disjoint paths from the root to
/// each deficient terminal in ascending order, reusing every edge bought so
/// far for free.
#[derive(Debug, Clone, Copy, Default)]
pub struct PerTerminal;

impl RootedStrategy for PerTerminal {
    fn name(&self) -> &'static str {
        "per-terminal"
    }

    fn augment(&self, req: &RootedAugmentRequest<'_>) -> Result<EdgeSet> {
        let mut owned = req.purchased.clone();
        for t in req.terminals.iter().filter(|&t| t != req.root) {
            let have = crate::graph::pair_connectivity_capped(
                &req.graph.subgraph(&owned),
                req.root,
                t,
                req.target_level,
            );
            if have >= req.target_level {
                continue;
            }
            let bought = min_cost_disjoint_paths(req.graph, req.root, t, req.target_level, &owned)?;
            owned.extend(bought.edges);
        }
        Ok(owned)
    }
}

/// Exhaustive minimum-cost augmentation for tiny graphs.
#[derive(Debug, Clone, Copy, Default)]
pub struct OracleExact;

impl RootedStrategy for OracleExact {
    fn name(&self) -> &'static str {
        "oracle-exact"
    }

    fn augment(&self, req: &RootedAugmentRequest<'_>) -> Result<EdgeSet> {
        let n = req.graph.vertex_count();
        if n > ORACLE_VERTEX_BOUND {
            return Err(Error::TooLarge {
                what: "vertex count",
                size: n,
                bound: ORACLE_VERTEX_BOUND,
            });
        }
        rooted_optimum(
            req.graph,
            req.root,
            req.terminals,
            req.target_level,
            req.purchased,
            SearchOrder::CheapestFirst,
        )?
        .map(|opt| opt.edges)
        .ok_or_else(|| Error::Internal("exhaustive search found no augmentation".into()))
    }
}

/// Registered strategy names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyId {
    #[default]
    PerTerminal,
    OracleExact,
}

impl StrategyId {
    pub const ALL: [StrategyId; 2] = [StrategyId::PerTerminal, StrategyId::OracleExact];

    pub fn strategy(self) -> &'static dyn RootedStrategy {
        match self {
            StrategyId::PerTerminal => &PerTerminal,
            StrategyId::OracleExact => &OracleExact,
        }
    }
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.strategy().name())
    }
}

impl FromStr for StrategyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        StrategyId::ALL
            .into_iter()
            .find(|id| id.strategy().name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown strategy {s:?}")))
    }
}

/// Runs `strategy` on `req` and verifies the result.
///
/// Fails with [`Error::Infeasible`] naming a deficient terminal when even
/// the full graph misses the target.
pub fn augment_rooted(
    req: &RootedAugmentRequest<'_>,
    strategy: &dyn RootedStrategy,
) -> Result<AugmentResult> {
    let g = req.graph;
    g.check_vertex(req.root)?;
    req.terminals.validate(g)?;
    if let Some(&e) = req.purchased.iter().find(|&&e| e >= g.edge_count()) {
        return Err(Error::InvalidInput(format!(
            "purchased edge {e} out of range"
        )));
    }
    if req.target_level < req.current_level {
        return Err(Error::InvalidInput(format!(
            "target level {} below current level {}",
            req.target_level, req.current_level
        )));
    }
    let have = rooted_connectivity(&g.subgraph(req.purchased), req.root, req.terminals);
    if have < req.current_level {
        return Err(Error::ConnectivityMismatch {
            expected: req.current_level,
            actual: have,
        });
    }
    if let Some((t, achievable)) =
        rooted_deficient_terminal(g, req.root, req.terminals, req.target_level)
    {
        return Err(Error::Infeasible {
            source_vertex: req.root,
            target: t,
            achievable,
            required: req.target_level,
        });
    }
    let proposal = strategy.augment(req)?;
    let new_edges: EdgeSet = proposal.difference(req.purchased).copied().collect();
    let mut result = req.purchased.clone();
    result.extend(new_edges.iter().copied());
    if let Some((t, k)) = rooted_deficient_terminal(
        &g.subgraph(&result),
        req.root,
        req.terminals,
        req.target_level,
    ) {
        return Err(Error::Internal(format!(
            "strategy {} left terminal {t} with {k} paths from {}, below {}",
            strategy.name(),
            req.root,
            req.target_level
        )));
    }
    Ok(AugmentResult {
        cost: g.cost_of(&new_edges),
        new_edges,
        strategy_name: strategy.name().to_string(),
    })
}

/// Graph with an extra root joined by zero-cost edges to every vertex of
/// `pad`. Returns the graph, the root and the padding edge ids.
pub fn padded_graph(g: &Graph, pad: &TerminalSet) -> (Graph, VertexId, EdgeSet) {
    let mut padded = g.clone();
    let root = padded.add_vertex();
    let edges = pad
        .iter()
        .map(|t| padded.add_edge(root, t, 0).expect("fresh root"))
        .collect();
    (padded, root, edges)
}

/// Root padding: augments a temporary root joined to `r_set` to rooted
/// connectivity `rho` towards `terminals`, then drops the root. Afterwards
/// every deficient set for `rho` contains a vertex of `r_set`.
pub fn root_pad(
    g: &Graph,
    purchased: &EdgeSet,
    terminals: &TerminalSet,
    r_set: &TerminalSet,
    rho: usize,
    strategy: &dyn RootedStrategy,
) -> Result<AugmentResult> {
    if rho > r_set.len() {
        return Err(Error::InvalidInput(format!(
            "padding level {rho} exceeds padding set size {}",
            r_set.len()
        )));
    }
    let (padded, root, pad_edges) = padded_graph(g, r_set);
    let mut owned = purchased.clone();
    owned.extend(pad_edges);
    let current = rooted_connectivity(&padded.subgraph(&owned), root, terminals).min(rho);
    let req = RootedAugmentRequest {
        graph: &padded,
        purchased: &owned,
        root,
        terminals,
        current_level: current,
        target_level: rho,
    };
    let result = augment_rooted(&req, strategy)?;
    debug_assert!(result.new_edges.iter().all(|&e| e < g.edge_count()));
    Ok(result)
}
