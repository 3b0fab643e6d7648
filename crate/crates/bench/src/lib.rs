//! Fixed workloads shared by the criterion benches.

use kconn::harness::experiment::{run_ratio_experiment, summarize, RatioConfig};
use kconn::harness::generate::{generate, GenModel, GenSpec};
use kconn::harness::report::ratio_table;
use kconn::solver::Instance;

/// Generated instance for `(model, n, |T|, k)` at a fixed seed.
pub fn workload(model: GenModel, n: usize, terminals: usize, k: usize) -> Instance {
    generate(&GenSpec::new(model, n, terminals, k, 42))
        .and_then(|g| g.file.to_instance())
        .expect("bench workloads are feasible")
}

pub fn workloads() -> Vec<(String, Instance)> {
    let mut out = Vec::new();
    for model in GenModel::ALL {
        for &(n, t, k) in &[(20, 4, 2), (24, 9, 3), (30, 8, 3), (36, 16, 4)] {
            out.push((format!("{model}/n{n}-t{t}-k{k}"), workload(model, n, t, k)));
        }
    }
    out
}

/// Ratio table against the exact optimum, with the median ratios.
pub fn ratio_report(count: usize, seed: u64) -> String {
    let cfg = RatioConfig {
        count,
        seed,
        ..RatioConfig::default()
    };
    let records = run_ratio_experiment(&cfg).expect("tiny instances solve");
    ratio_table(&records, &summarize(&records))
}
