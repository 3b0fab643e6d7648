//! Minimum-cost subset `k`-connectivity: case dispatch on `|T|`, the
//! pairwise algorithm, the iterative covering algorithm and composition
//! through a `k`-terminal subproblem.

mod guards;
mod instance;
mod iterative;
mod pairwise;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::connectivity::{deficient_pair, subset_connectivity};
use crate::error::{Error, Result};
use crate::graph::{Cost, EdgeSet, VertexId};
use crate::harness::verify::{certify, Certificate};
use crate::rooted::StrategyId;

pub use guards::{names as guard_names, GuardLevel, GuardLog, GuardStat};
pub use instance::{Instance, Subdivision};
pub use iterative::{
    covering_procedure, iterative_solve, preprocess_reduce_cores, AugmentationState, CoverMode,
    CoveringTrace, IterativeOutcome, MicroIteration, PreprocessTrace, RootedCall,
};
pub use pairwise::{compose_small_t_solver, trivial_pairwise, CompositionTrace};

/// Which algorithm handled an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DispatchCase {
    /// Pairwise min-cost disjoint paths, `|T| < 2k`.
    Trivial,
    /// Covering with micro iterations, `2k <= |T| < k²`.
    Moderate,
    /// Covering with a single hitting round, `|T| >= k²`.
    Large,
    /// Covering without preprocessing for `|T| < 2k`.
    Below2k,
    /// Pairwise on the first `k` terminals, then rooted augmentation from a
    /// root padded to them.
    Composed,
}

impl DispatchCase {
    pub const ALL: [DispatchCase; 5] = [
        DispatchCase::Trivial,
        DispatchCase::Moderate,
        DispatchCase::Large,
        DispatchCase::Below2k,
        DispatchCase::Composed,
    ];

    /// Automatic choice by terminal count.
    pub fn for_size(terminals: usize, k: usize) -> DispatchCase {
        if terminals < 2 * k {
            DispatchCase::Trivial
        } else if terminals >= k * k {
            DispatchCase::Large
        } else {
            DispatchCase::Moderate
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DispatchCase::Trivial => "trivial",
            DispatchCase::Moderate => "moderate",
            DispatchCase::Large => "large",
            DispatchCase::Below2k => "below2k",
            DispatchCase::Composed => "composed",
        }
    }
}

impl fmt::Display for DispatchCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DispatchCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DispatchCase::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown dispatch case {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Forced case; automatic when `None`.
    pub dispatch: Option<DispatchCase>,
    pub strategy: StrategyId,
    pub guard_level: GuardLevel,
    /// Largest (subdivided) vertex count for enumeration guards.
    pub oracle_bound: usize,
    /// Recorded in the report; the solver itself is deterministic.
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            dispatch: None,
            strategy: StrategyId::default(),
            guard_level: GuardLevel::default(),
            oracle_bound: crate::connectivity::BRUTE_FORCE_BOUND,
            seed: 0,
        }
    }
}

/// Cost of raising the subset connectivity from `level` to the next value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCost {
    pub level: usize,
    pub reached: usize,
    pub cost: Cost,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub dispatch_case: DispatchCase,
    pub strategy: String,
    pub seed: u64,
    pub k: usize,
    pub terminal_count: usize,
    /// Original edge ids, purchased edges included.
    pub solution: EdgeSet,
    /// Cost of solution edges that were not purchased.
    pub total_cost: Cost,
    pub initial_level: usize,
    pub level_costs: Vec<LevelCost>,
    pub preprocessing: Vec<PreprocessTrace>,
    pub traces: Vec<CoveringTrace>,
    pub composition: Option<CompositionTrace>,
    pub subdivided_edges: usize,
    pub guards: GuardLog,
    pub verification: Certificate,
}

impl SolveReport {
    pub fn is_verified(&self) -> bool {
        self.verification.pass
    }
}

/// Fails with [`Error::Infeasible`] naming a terminal pair when the whole
/// graph is not subset `k`-connected.
pub fn check_feasible(inst: &Instance) -> Result<()> {
    match deficient_pair(&inst.graph, &inst.terminals, inst.k) {
        Some((s, t, achievable)) => Err(Error::Infeasible {
            source_vertex: s,
            target: t,
            achievable,
            required: inst.k,
        }),
        None => Ok(()),
    }
}

/// Solves `inst`, dispatching on `|T|` unless `config` forces a case, and
/// verifies the result.
pub fn solve(inst: &Instance, config: &SolverConfig) -> Result<SolveReport> {
    inst.validate()?;
    check_feasible(inst)?;
    let case = config
        .dispatch
        .unwrap_or_else(|| DispatchCase::for_size(inst.terminals.len(), inst.k));
    let (work, subdivision) = inst.subdivide();
    let strategy = config.strategy.strategy();
    let initial_level =
        subset_connectivity(&work.graph.subgraph(&work.purchased), &work.terminals).min(inst.k);

    let mut guards = GuardLog::default();
    let mut preprocessing = Vec::new();
    let mut traces = Vec::new();
    let mut level_costs = Vec::new();
    let mut composition = None;
    let chosen = match case {
        DispatchCase::Trivial => {
            let edges = trivial_pairwise(&work)?;
            if initial_level < inst.k {
                level_costs.push(LevelCost {
                    level: initial_level,
                    reached: inst.k,
                    cost: work.graph.cost_excluding(&edges, &work.purchased),
                });
            }
            edges
        }
        DispatchCase::Composed => {
            let (edges, trace) = compose_small_t_solver(&work, &trivial_pairwise, strategy)?;
            composition = Some(trace);
            if initial_level < inst.k {
                level_costs.push(LevelCost {
                    level: initial_level,
                    reached: inst.k,
                    cost: work.graph.cost_excluding(&edges, &work.purchased),
                });
            }
            edges
        }
        DispatchCase::Moderate | DispatchCase::Large | DispatchCase::Below2k => {
            let out = iterative_solve(&work, config, case)?;
            guards.merge(&out.guards);
            preprocessing = out.preprocessing;
            traces = out.traces;
            level_costs = out.level_costs;
            out.edges
        }
    };
    let mut solution = subdivision.lift(&chosen);
    solution.extend(inst.purchased.iter().copied());
    let verification = certify(&inst.graph, &solution, &inst.terminals, inst.k);
    if !verification.pass {
        let (s, t) = verification
            .witness
            .expect("failed certificate has a witness");
        return Err(Error::Internal(format!(
            "{case} solution leaves terminals {s} and {t} below {}",
            inst.k
        )));
    }
    Ok(SolveReport {
        dispatch_case: case,
        strategy: strategy.name().to_string(),
        seed: config.seed,
        k: inst.k,
        terminal_count: inst.terminals.len(),
        total_cost: inst.graph.cost_excluding(&solution, &inst.purchased),
        solution,
        initial_level,
        level_costs,
        preprocessing,
        traces,
        composition,
        subdivided_edges: subdivision.halves.len(),
        guards,
        verification,
    })
}

/// Lowest-id terminal of `set`.
pub(crate) fn lowest_terminal(
    set: &crate::graph::VertexSet,
    t: &crate::connectivity::TerminalSet,
) -> Option<VertexId> {
    t.iter().find(|&v| set.contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::TerminalSet;
    use crate::fixtures::example_tree;
    use crate::graph::Graph;

    #[test]
    fn dispatch_by_size() {
        assert_eq!(DispatchCase::for_size(3, 2), DispatchCase::Trivial);
        assert_eq!(DispatchCase::for_size(4, 2), DispatchCase::Large);
        assert_eq!(DispatchCase::for_size(6, 3), DispatchCase::Moderate);
        assert_eq!(DispatchCase::for_size(9, 3), DispatchCase::Large);
        for c in DispatchCase::ALL {
            assert_eq!(c.name().parse::<DispatchCase>().unwrap(), c);
        }
    }

    #[test]
    fn tree_instance_k1_every_case() {
        let f = example_tree();
        let inst = Instance::new(f.graph.clone(), f.terminals.clone(), 1).unwrap();
        for case in DispatchCase::ALL {
            let config = SolverConfig {
                dispatch: Some(case),
                ..SolverConfig::default()
            };
            let report = solve(&inst, &config).unwrap();
            assert!(report.is_verified());
            assert!(report.guards.all_pass(), "{case}: {:?}", report.guards);
            // every tree edge lies on some terminal path
            assert_eq!(report.total_cost, 8, "{case}");
        }
    }

    #[test]
    fn disconnected_terminal_is_infeasible() {
        let g = Graph::from_edges(4, [(0, 1, 1), (1, 2, 1)]).unwrap();
        let inst = Instance::new(g, TerminalSet::new(vec![0, 3]).unwrap(), 1).unwrap();
        assert!(matches!(
            solve(&inst, &SolverConfig::default()),
            Err(Error::Infeasible {
                source_vertex: 0,
                target: 3,
                achievable: 0,
                required: 1
            })
        ));
    }

    #[test]
    fn purchased_connectivity_costs_nothing() {
        let f = example_tree();
        let inst =
            Instance::with_purchased(f.graph.clone(), f.terminals.clone(), 1, f.graph.all_edges())
                .unwrap();
        let report = solve(&inst, &SolverConfig::default()).unwrap();
        assert_eq!(report.total_cost, 0);
        assert_eq!(report.initial_level, 1);
        assert!(report.traces.is_empty());
    }
}
