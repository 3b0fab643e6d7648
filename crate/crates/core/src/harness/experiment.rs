//! Batch runs: solver feasibility over generated instances and cost
//! ratios against the exact optimum on tiny ones.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connectivity::{subset_connectivity, TerminalSet};
use crate::error::Result;
use crate::exact::SearchOrder;
use crate::graph::{Cost, Graph};
use crate::solver::{solve, trivial_pairwise, DispatchCase, Instance, SolverConfig};

use super::oracle::brute_force_optimum;

/// Per-instance seed derived from a batch seed.
pub fn instance_seed(batch: u64, id: usize) -> u64 {
    batch ^ (id as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchRecord {
    pub id: usize,
    pub n: usize,
    pub edges: usize,
    pub terminals: usize,
    pub k: usize,
    pub dispatch_case: DispatchCase,
    pub cost: Cost,
    pub verified: bool,
    pub guards_pass: bool,
    /// Error text when the solver failed.
    pub error: Option<String>,
}

/// Solves every instance in parallel; records come back in input order.
pub fn solve_batch(instances: &[Instance], config: &SolverConfig) -> Vec<BatchRecord> {
    instances
        .par_iter()
        .enumerate()
        .map(|(id, inst)| {
            let mut rec = BatchRecord {
                id,
                n: inst.graph.vertex_count(),
                edges: inst.graph.edge_count(),
                terminals: inst.terminals.len(),
                k: inst.k,
                dispatch_case: config
                    .dispatch
                    .unwrap_or_else(|| DispatchCase::for_size(inst.terminals.len(), inst.k)),
                cost: 0,
                verified: false,
                guards_pass: false,
                error: None,
            };
            match solve(inst, config) {
                Ok(report) => {
                    rec.cost = report.total_cost;
                    rec.verified = report.is_verified();
                    rec.guards_pass = report.guards.all_pass();
                }
                Err(e) => rec.error = Some(e.to_string()),
            }
            rec
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioConfig {
    pub count: usize,
    pub seed: u64,
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_k: usize,
}

impl Default for RatioConfig {
    fn default() -> Self {
        Self {
            count: 60,
            seed: 7,
            min_vertices: 5,
            max_vertices: 8,
            max_edges: 20,
            max_k: 3,
        }
    }
}

/// Random tiny instance with at most `max_edges` edges, feasible for the
/// returned `k`, or `None` when the draw is disconnected on the terminals.
pub fn tiny_instance(cfg: &RatioConfig, seed: u64) -> Option<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(cfg.min_vertices..=cfg.max_vertices);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    rand::seq::SliceRandom::shuffle(pairs.as_mut_slice(), &mut rng);
    let m = rng.gen_range(n..=cfg.max_edges.min(pairs.len()));
    let edges = pairs[..m]
        .iter()
        .map(|&(u, v)| (u, v, rng.gen_range(1..=9)));
    let g = Graph::from_edges(n, edges).ok()?;
    let tcount = rng.gen_range(2..=(n / 2 + 1).min(n));
    let mut ids: Vec<usize> = (0..n).collect();
    rand::seq::SliceRandom::shuffle(ids.as_mut_slice(), &mut rng);
    let t = TerminalSet::new(ids[..tcount].to_vec()).ok()?;
    let conn = subset_connectivity(&g, &t);
    if conn == 0 {
        return None;
    }
    let k = rng.gen_range(1..=conn.min(cfg.max_k));
    Instance::new(g, t, k).ok()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioRecord {
    pub id: usize,
    pub seed: u64,
    pub n: usize,
    pub edges: usize,
    pub terminals: usize,
    pub k: usize,
    pub optimum: Cost,
    /// Optimum found with the opposite branching order.
    pub optimum_check: Cost,
    pub pairwise_cost: Cost,
    pub iterative_cost: Cost,
    pub iterative_case: DispatchCase,
    pub pairwise_ratio: f64,
    pub iterative_ratio: f64,
    /// `pairwise_cost <= |T|² · optimum`.
    pub pairwise_bound_holds: bool,
}

fn ratio(cost: Cost, opt: Cost) -> f64 {
    if opt == 0 {
        if cost == 0 {
            1.0
        } else {
            f64::MAX
        }
    } else {
        cost as f64 / opt as f64
    }
}

fn ratio_record(id: usize, seed: u64, inst: &Instance) -> Result<RatioRecord> {
    let opt = brute_force_optimum(inst, SearchOrder::CheapestFirst)?;
    let check = brute_force_optimum(inst, SearchOrder::CostliestFirst)?;
    let pairwise = trivial_pairwise(inst)?;
    let pairwise_cost = inst.graph.cost_excluding(&pairwise, &inst.purchased);
    let case = match DispatchCase::for_size(inst.terminals.len(), inst.k) {
        DispatchCase::Trivial => DispatchCase::Below2k,
        other => other,
    };
    let config = SolverConfig {
        dispatch: Some(case),
        ..SolverConfig::default()
    };
    let iterative = solve(inst, &config)?;
    let tt = inst.terminals.len() as Cost;
    Ok(RatioRecord {
        id,
        seed,
        n: inst.graph.vertex_count(),
        edges: inst.graph.edge_count(),
        terminals: inst.terminals.len(),
        k: inst.k,
        optimum: opt.cost,
        optimum_check: check.cost,
        pairwise_cost,
        iterative_cost: iterative.total_cost,
        iterative_case: case,
        pairwise_ratio: ratio(pairwise_cost, opt.cost),
        iterative_ratio: ratio(iterative.total_cost, opt.cost),
        pairwise_bound_holds: pairwise_cost <= tt * tt * opt.cost,
    })
}

/// Draws `cfg.count` feasible tiny instances and compares both solvers
/// with the exact optimum. Instance `i` uses the `i`-th feasible draw.
pub fn run_ratio_experiment(cfg: &RatioConfig) -> Result<Vec<RatioRecord>> {
    let mut draws = Vec::with_capacity(cfg.count);
    let mut attempt = 0;
    while draws.len() < cfg.count {
        let seed = instance_seed(cfg.seed, attempt);
        attempt += 1;
        if let Some(inst) = tiny_instance(cfg, seed) {
            draws.push((seed, inst));
        }
    }
    draws
        .par_iter()
        .enumerate()
        .map(|(id, (seed, inst))| ratio_record(id, *seed, inst))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioSummary {
    pub count: usize,
    pub median_pairwise_ratio: f64,
    pub median_iterative_ratio: f64,
    pub max_iterative_ratio: f64,
    pub pairwise_bound_violations: usize,
    pub order_mismatches: usize,
}

pub fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    }
}

pub fn summarize(records: &[RatioRecord]) -> RatioSummary {
    let mut pw: Vec<f64> = records.iter().map(|r| r.pairwise_ratio).collect();
    let mut it: Vec<f64> = records.iter().map(|r| r.iterative_ratio).collect();
    RatioSummary {
        count: records.len(),
        median_pairwise_ratio: median(&mut pw),
        median_iterative_ratio: median(&mut it),
        max_iterative_ratio: it.iter().copied().fold(0.0, f64::max),
        pairwise_bound_violations: records.iter().filter(|r| !r.pairwise_bound_holds).count(),
        order_mismatches: records
            .iter()
            .filter(|r| r.optimum != r.optimum_check)
            .count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
        assert!(median(&mut []).is_nan());
    }

    #[test]
    fn small_ratio_run_is_sandwiched() {
        let cfg = RatioConfig {
            count: 6,
            ..RatioConfig::default()
        };
        let records = run_ratio_experiment(&cfg).unwrap();
        assert_eq!(records.len(), 6);
        for r in &records {
            assert!(r.edges <= cfg.max_edges);
            assert!(r.pairwise_cost >= r.optimum && r.iterative_cost >= r.optimum);
            assert_eq!(r.optimum, r.optimum_check);
        }
        assert_eq!(run_ratio_experiment(&cfg).unwrap(), records);
    }
}
