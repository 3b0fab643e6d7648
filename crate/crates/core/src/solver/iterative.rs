use serde::{Deserialize, Serialize};

use crate::connectivity::{subset_connectivity, MaskGraph, TerminalSet};
use crate::core_halo::{
    compute_core_records, hits, max_halo_membership, oracle_structure, thickness_table, CoreRecord,
};
use crate::error::{Error, Result};
use crate::graph::{Cost, EdgeSet, Graph, VertexId, VertexSet};
use crate::rooted::{
    augment_rooted, root_pad, AugmentResult, RootedAugmentRequest, RootedStrategy,
};

use super::guards::{names, GuardLevel, GuardLog};
use super::{lowest_terminal, DispatchCase, Instance, LevelCost, SolverConfig};

/// How the covering procedure builds its hitting set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverMode {
    /// Repeated micro iterations until every family is hit.
    Moderate,
    /// One round: the min-thickness terminal plus a core terminal for every
    /// family it misses.
    Large,
}

/// Owned edges and the subset connectivity they achieve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentationState {
    pub purchased: EdgeSet,
    pub level: usize,
    pub inner_index: usize,
    /// Fewest terminals in a deficient set, once cores are known.
    pub smallest_deficient_terminals: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MicroIteration {
    pub index: usize,
    /// Families not hit at the start of the iteration.
    pub uncovered: usize,
    pub pick: VertexId,
    pub pick_thickness: usize,
    /// Terminals added to the hitting set, `pick` first if new.
    pub chosen: Vec<VertexId>,
    /// Set when no family was hit and every remaining core contributed a
    /// terminal instead.
    pub fallback: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedCall {
    pub root: VertexId,
    pub cost: Cost,
    pub new_edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringTrace {
    pub level: usize,
    pub inner_index: usize,
    pub mode: CoverMode,
    pub core_count: usize,
    /// Fewest terminals in a core.
    pub phi: usize,
    pub micro: Vec<MicroIteration>,
    pub hit_set: Vec<VertexId>,
    pub calls: Vec<RootedCall>,
    pub cost: Cost,
}

impl CoveringTrace {
    pub fn h1(&self) -> usize {
        self.micro.first().map_or(0, |m| m.uncovered)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreprocessTrace {
    pub level: usize,
    pub root_set: Vec<VertexId>,
    pub rho: usize,
    pub cost: Cost,
    pub cores_after: usize,
    /// `2(|T|-1)(ℓ+1)/(|T|-ℓ)`.
    pub core_bound: f64,
    pub cores_meet_root_set: bool,
}

impl Eq for PreprocessTrace {}

#[derive(Debug, Clone)]
pub struct IterativeOutcome {
    /// Purchased edges plus everything bought.
    pub edges: EdgeSet,
    pub guards: GuardLog,
    pub preprocessing: Vec<PreprocessTrace>,
    pub traces: Vec<CoveringTrace>,
    pub level_costs: Vec<LevelCost>,
}

fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

/// Covers every halo-family in `records`: builds a hitting set `S`, then
/// raises the rooted connectivity from each `r ∈ S` (ascending) to
/// `ℓ + 1`, reusing edges bought earlier in the same call.
///
/// Returns the newly bought edges.
pub fn covering_procedure(
    g: &Graph,
    t: &TerminalSet,
    state: &AugmentationState,
    records: &[CoreRecord],
    mode: CoverMode,
    strategy: &dyn RootedStrategy,
    mut guards: Option<&mut GuardLog>,
) -> Result<(EdgeSet, CoveringTrace)> {
    if records.is_empty() {
        return Err(Error::InvalidInput("no halo-families to cover".into()));
    }
    let level = state.level;
    let tn = t.len();
    let mut hit_set = VertexSet::new();
    let mut unhit: Vec<usize> = (0..records.len()).collect();
    let mut micro: Vec<MicroIteration> = Vec::new();
    while !unhit.is_empty() {
        let h = unhit.len();
        let table = thickness_table(unhit.iter().map(|&x| &records[x]), t);
        let (pick, pick_thickness) = table.min_terminal().expect("terminal set is non-empty");
        let mut chosen = Vec::new();
        let add = |v: VertexId, set: &mut VertexSet, chosen: &mut Vec<VertexId>| {
            if set.insert(v) {
                chosen.push(v);
            }
        };
        add(pick, &mut hit_set, &mut chosen);
        for &x in &unhit {
            let rec = &records[x];
            if rec.is_hit_by(pick) {
                continue;
            }
            let needs = match mode {
                CoverMode::Large => true,
                CoverMode::Moderate => rec.halo_set.contains(pick) && !rec.core.contains(pick),
            };
            if needs {
                let r = lowest_terminal(&rec.core, t).expect("cores contain terminals");
                add(r, &mut hit_set, &mut chosen);
            }
        }
        unhit.retain(|&x| !hits(&hit_set, &records[x]));
        let mut fallback = false;
        if unhit.len() == h {
            for &x in &unhit {
                let r = lowest_terminal(&records[x].core, t).expect("cores contain terminals");
                add(r, &mut hit_set, &mut chosen);
            }
            unhit.clear();
            fallback = true;
        }
        if let Some(log) = guards.as_deref_mut() {
            let after = unhit.len();
            log.check(
                names::THICKNESS_STEP,
                fallback || after * tn <= level * h,
                || format!("{after} families left of {h} with |T| = {tn}, ℓ = {level}"),
            );
            log.check(
                names::MIN_THICKNESS,
                pick_thickness * tn <= level * h,
                || {
                    format!(
                        "min thickness {pick_thickness} over {h} families, |T| = {tn}, ℓ = {level}"
                    )
                },
            );
            if mode == CoverMode::Moderate && tn > level {
                let extra = chosen.len().saturating_sub(1);
                log.check(names::MICRO_CHOICES, fallback || extra * (tn - level) <= 2 * (tn - 1), || {
                    format!("{extra} core terminals chosen beside the pick, |T| = {tn}, ℓ = {level}")
                });
            }
        }
        micro.push(MicroIteration {
            index: micro.len() + 1,
            uncovered: h,
            pick,
            pick_thickness,
            chosen,
            fallback,
        });
        if mode == CoverMode::Large {
            debug_assert!(unhit.is_empty());
        }
    }
    if let Some(log) = guards {
        let h1 = micro[0].uncovered;
        match mode {
            CoverMode::Large => log.check(names::SINGLE_ROUND, micro.len() == 1, || {
                format!("{} rounds in large mode", micro.len())
            }),
            CoverMode::Moderate if tn >= 2 * level => {
                for m in &micro {
                    log.check(names::HALVING, m.uncovered << (m.index - 1) <= h1, || {
                        format!("h_{} = {} with h_1 = {h1}", m.index, m.uncovered)
                    });
                }
                log.check(names::MICRO_COUNT, micro.len() <= ceil_log2(h1) + 1, || {
                    format!("{} micro iterations for h_1 = {h1}", micro.len())
                });
            }
            CoverMode::Moderate => {}
        }
    }

    let mut owned = state.purchased.clone();
    let mut bought = EdgeSet::new();
    let mut calls = Vec::new();
    for root in hit_set.iter() {
        let req = RootedAugmentRequest {
            graph: g,
            purchased: &owned,
            root,
            terminals: t,
            current_level: level,
            target_level: level + 1,
        };
        let res = augment_rooted(&req, strategy)?;
        calls.push(RootedCall {
            root,
            cost: res.cost,
            new_edges: res.new_edges.len(),
        });
        owned.extend(res.new_edges.iter().copied());
        bought.extend(res.new_edges);
    }
    let trace = CoveringTrace {
        level,
        inner_index: state.inner_index,
        mode,
        core_count: records.len(),
        phi: records
            .iter()
            .map(|r| t.count_in(&r.core))
            .min()
            .unwrap_or(0),
        micro,
        hit_set: hit_set.to_vec(),
        calls,
        cost: g.cost_of(&bought),
    };
    Ok((bought, trace))
}

/// Root padding from the first `ℓ + 1` terminals with `ρ = ℓ + 1`, after
/// which every core contains one of them.
pub fn preprocess_reduce_cores(
    g: &Graph,
    t: &TerminalSet,
    state: &AugmentationState,
    strategy: &dyn RootedStrategy,
) -> Result<(AugmentResult, PreprocessTrace)> {
    let level = state.level;
    let tn = t.len();
    if tn < 2 * level || level + 1 > tn {
        return Err(Error::InvalidInput(format!(
            "core reduction needs |T| >= 2ℓ, got |T| = {tn}, ℓ = {level}"
        )));
    }
    let r_set = t.prefix(level + 1)?;
    let res = root_pad(g, &state.purchased, t, &r_set, level + 1, strategy)?;
    let mut owned = state.purchased.clone();
    owned.extend(res.new_edges.iter().copied());
    let sub = g.subgraph(&owned);
    let cores = if subset_connectivity(&sub, t) == level {
        crate::core_halo::compute_cores(&sub, t, level)?
    } else {
        Vec::new()
    };
    let trace = PreprocessTrace {
        level,
        root_set: r_set.as_slice().to_vec(),
        rho: level + 1,
        cost: res.cost,
        cores_after: cores.len(),
        core_bound: 2.0 * (tn as f64 - 1.0) * (level as f64 + 1.0) / (tn - level) as f64,
        cores_meet_root_set: cores.iter().all(|c| r_set.count_in(c) > 0),
    };
    Ok((res, trace))
}

struct GuardScope {
    flow: bool,
    oracle: bool,
}

impl GuardScope {
    fn new(level: GuardLevel, vertex_count: usize, bound: usize) -> Self {
        let small = vertex_count <= bound;
        match level {
            GuardLevel::Off => Self {
                flow: false,
                oracle: false,
            },
            GuardLevel::OracleScale => Self {
                flow: small,
                oracle: small,
            },
            GuardLevel::Always => Self {
                flow: true,
                oracle: small,
            },
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn check_records(
    log: &mut GuardLog,
    sub: &Graph,
    t: &TerminalSet,
    level: usize,
    inner: usize,
    records: &[CoreRecord],
    old_cores: Option<&[VertexSet]>,
    oracle: bool,
) -> Result<()> {
    let tn = t.len();
    for r in records {
        log.check(
            names::HALO_NEIGHBORS,
            r.halo_neighbors.len() <= level,
            || format!("|N(H({}))| = {}", r.core, r.halo_neighbors.len()),
        );
    }
    if tn > level {
        let most = max_halo_membership(records, t);
        log.check(
            names::HALO_MEMBERSHIP,
            most * (tn - level) <= 2 * (tn - 1),
            || format!("a terminal lies in {most} halo-sets, |T| = {tn}, ℓ = {level}"),
        );
    }
    let table = thickness_table(records, t);
    let (_, min) = table.min_terminal().expect("terminal set is non-empty");
    log.check(
        names::MIN_THICKNESS,
        min * tn <= level * records.len(),
        || {
            format!(
                "min thickness {min} with q = {}, |T| = {tn}, ℓ = {level}",
                records.len()
            )
        },
    );
    let phi = records
        .iter()
        .map(|r| t.count_in(&r.core))
        .min()
        .unwrap_or(0);
    let need = 1usize << (inner - 1).min(usize::BITS as usize - 1);
    log.check(names::PHI_GROWTH, phi >= need, || {
        format!("inner iteration {inner}: a core holds {phi} terminals, below {need}")
    });
    if let Some(old) = old_cores {
        for r in records {
            let inside: Vec<&VertexSet> = old.iter().filter(|c| c.is_subset(&r.core)).collect();
            let ok = inside.iter().enumerate().any(|(i, c)| {
                inside[i + 1..]
                    .iter()
                    .any(|d| t.count_in(&c.intersection(d)) == 0)
            });
            log.check(names::TWO_OLD_CORES, ok, || {
                format!(
                    "new core {} holds {} old cores, none terminal-disjoint",
                    r.core,
                    inside.len()
                )
            });
        }
    }
    if oracle {
        let o = oracle_structure(sub, t, level)?;
        let same = o.records.len() == records.len()
            && o.records
                .iter()
                .zip(records)
                .all(|(a, b)| a.core == b.core && a.halo_set == b.halo_set);
        log.check(names::ORACLE_RECORDS, same, || {
            format!("flow and enumeration disagree at level {level}, inner iteration {inner}")
        });
        let tm = o.mask_graph.terminal_mask();
        let clash = o.small.iter().find(|&&u| {
            o.cores.iter().enumerate().any(|(i, &c)| {
                c & u == c
                    && o.cores[i + 1..]
                        .iter()
                        .any(|&d| d & u == d && c & d & tm != 0)
            })
        });
        log.check(names::TWO_CORE_EXCLUSION, clash.is_none(), || {
            format!(
                "small deficient set {} holds two cores sharing a terminal",
                MaskGraph::to_set(*clash.expect("clash found"))
            )
        });
        let min = o.min_deficient_terminals().unwrap_or(usize::MAX);
        log.check(names::PHI_GROWTH, min >= need, || {
            format!("inner iteration {inner}: a deficient set holds {min} terminals, below {need}")
        });
    }
    Ok(())
}

/// Raises the subset connectivity of `inst.purchased` one level at a time
/// up to `k` with the covering procedure. `case` selects the cover mode and
/// whether cores are reduced by root padding first.
pub fn iterative_solve(
    inst: &Instance,
    config: &SolverConfig,
    case: DispatchCase,
) -> Result<IterativeOutcome> {
    let g = &inst.graph;
    let t = &inst.terminals;
    let tn = t.len();
    let k = inst.k;
    let strategy = config.strategy.strategy();
    let scope = GuardScope::new(config.guard_level, g.vertex_count(), config.oracle_bound);
    let (mode, reduce) = match case {
        DispatchCase::Large => (CoverMode::Large, true),
        DispatchCase::Moderate => (CoverMode::Moderate, true),
        DispatchCase::Below2k => (CoverMode::Moderate, false),
        other => {
            return Err(Error::InvalidInput(format!(
                "{other} is not an iterative dispatch case"
            )))
        }
    };
    let mut log = GuardLog::default();
    let mut preprocessing = Vec::new();
    let mut traces = Vec::new();
    let mut level_costs = Vec::new();
    let mut owned = inst.purchased.clone();
    let mut level = subset_connectivity(&g.subgraph(&owned), t).min(k);
    let inner_cap = 4 * tn + 8;

    while level < k {
        let start_cost = g.cost_excluding(&owned, &inst.purchased);
        let mut state = AugmentationState {
            purchased: owned.clone(),
            level,
            inner_index: 0,
            smallest_deficient_terminals: None,
        };
        if reduce && tn >= 2 * level {
            let (res, trace) = preprocess_reduce_cores(g, t, &state, strategy)?;
            owned.extend(res.new_edges);
            if scope.flow {
                log.check(names::PAD_MEETS_R, trace.cores_meet_root_set, || {
                    format!("a core at level {level} misses the padding set")
                });
                log.check(
                    names::CORE_COUNT,
                    trace.cores_after as f64 <= trace.core_bound + 1e-9,
                    || {
                        format!(
                            "{} cores above bound {:.2}",
                            trace.cores_after, trace.core_bound
                        )
                    },
                );
            }
            if scope.oracle {
                let sub = g.subgraph(&owned);
                let mg = MaskGraph::new(&sub, t)?;
                let r_mask = t.prefix(level + 1)?.iter().fold(0u32, |m, v| m | 1 << v);
                let miss = mg
                    .deficient_masks(level + 1)
                    .into_iter()
                    .find(|&u| u & r_mask == 0);
                log.check(names::PAD_MEETS_R, miss.is_none(), || {
                    format!(
                        "deficient set {} misses the padding set",
                        MaskGraph::to_set(miss.expect("miss found"))
                    )
                });
            }
            preprocessing.push(trace);
        }
        let mut old_cores: Option<Vec<VertexSet>> = None;
        let mut inner = 0;
        loop {
            let sub = g.subgraph(&owned);
            let records = compute_core_records(&sub, t, level)?;
            if records.is_empty() {
                break;
            }
            inner += 1;
            if inner > inner_cap {
                return Err(Error::Internal(format!(
                    "no progress after {inner_cap} inner iterations at level {level}"
                )));
            }
            state.purchased = owned.clone();
            state.inner_index = inner;
            state.smallest_deficient_terminals = records.iter().map(|r| t.count_in(&r.core)).min();
            if scope.flow {
                check_records(
                    &mut log,
                    &sub,
                    t,
                    level,
                    inner,
                    &records,
                    old_cores.as_deref(),
                    scope.oracle,
                )?;
            }
            let guards = scope.flow.then_some(&mut log);
            let (bought, trace) =
                covering_procedure(g, t, &state, &records, mode, strategy, guards)?;
            owned.extend(bought);
            traces.push(trace);
            old_cores = Some(records.into_iter().map(|r| r.core).collect());
        }
        if scope.flow {
            log.check(names::INNER_COUNT, inner <= ceil_log2(tn) + 1, || {
                format!("{inner} inner iterations with |T| = {tn}")
            });
        }
        let reached = subset_connectivity(&g.subgraph(&owned), t).min(k);
        if scope.flow {
            log.check(names::LEVEL_MONOTONE, reached > level, || {
                format!("level stayed at {level}")
            });
        }
        if reached <= level {
            return Err(Error::Internal(format!(
                "subset connectivity stuck at {level}"
            )));
        }
        level_costs.push(LevelCost {
            level,
            reached,
            cost: g.cost_excluding(&owned, &inst.purchased) - start_cost,
        });
        level = reached;
    }
    Ok(IterativeOutcome {
        edges: owned,
        guards: log,
        preprocessing,
        traces,
        level_costs,
    })
}
