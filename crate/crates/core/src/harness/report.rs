//! Human-readable and JSON renderings of solver output.

use std::fmt::Write as _;

use crate::graph::Graph;
use crate::solver::SolveReport;

use super::experiment::{RatioRecord, RatioSummary};
use super::verify::Certificate;

pub fn solve_text(report: &SolveReport, g: &Graph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "dispatch {}", report.dispatch_case);
    let _ = writeln!(s, "strategy {}", report.strategy);
    let _ = writeln!(s, "seed {}", report.seed);
    let _ = writeln!(s, "k {} terminals {}", report.k, report.terminal_count);
    let _ = writeln!(s, "cost {}", report.total_cost);
    let _ = writeln!(s, "initial-level {}", report.initial_level);
    for lc in &report.level_costs {
        let _ = writeln!(s, "level {} -> {} cost {}", lc.level, lc.reached, lc.cost);
    }
    for p in &report.preprocessing {
        let _ = writeln!(
            s,
            "preprocess level {} rho {} cost {} cores-after {}",
            p.level, p.rho, p.cost, p.cores_after
        );
    }
    for t in &report.traces {
        let _ = writeln!(
            s,
            "cover level {} inner {} mode {:?} cores {} phi {} micro {} hit {:?} cost {}",
            t.level,
            t.inner_index,
            t.mode,
            t.core_count,
            t.phi,
            t.micro.len(),
            t.hit_set,
            t.cost
        );
    }
    if let Some(c) = &report.composition {
        let _ = writeln!(
            s,
            "compose root-set {:?} base {} rooted {}",
            c.root_set, c.base_cost, c.rooted_cost
        );
    }
    if report.subdivided_edges > 0 {
        let _ = writeln!(s, "subdivided {}", report.subdivided_edges);
    }
    for (name, stat) in &report.guards.stats {
        let verdict = if stat.violations == 0 { "pass" } else { "FAIL" };
        let _ = writeln!(
            s,
            "guard {name} {verdict} {}/{}",
            stat.checks - stat.violations,
            stat.checks
        );
        if let Some(d) = &stat.first_violation {
            let _ = writeln!(s, "  {d}");
        }
    }
    s.push_str(&certificate_text(&report.verification));
    for &id in &report.solution {
        let e = g.edge(id);
        let _ = writeln!(s, "edge {} {} {}", e.u, e.v, e.cost);
    }
    s
}

pub fn certificate_text(cert: &Certificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "verified {}", if cert.pass { "pass" } else { "fail" });
    if let Some((a, b)) = cert.witness {
        let _ = writeln!(s, "witness {a} {b}");
    }
    if let Some(m) = cert.min_connectivity() {
        let _ = writeln!(s, "min-pair-connectivity {m} required {}", cert.k);
    }
    s
}

pub fn json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data");
    s.push('\n');
    s
}

/// One JSON object per line.
pub fn json_lines<T: serde::Serialize>(values: &[T]) -> String {
    values
        .iter()
        .map(|v| serde_json::to_string(v).expect("plain data") + "\n")
        .collect()
}

pub fn ratio_table(records: &[RatioRecord], summary: &RatioSummary) -> String {
    let mut s = String::from("id   n  m  |T| k  opt  pairwise  iterative  case\n");
    for r in records {
        let _ = writeln!(
            s,
            "{:<4} {:<2} {:<2} {:<3} {:<2} {:<4} {:<9} {:<10} {}",
            r.id,
            r.n,
            r.edges,
            r.terminals,
            r.k,
            r.optimum,
            r.pairwise_cost,
            r.iterative_cost,
            r.iterative_case
        );
    }
    let _ = writeln!(
        s,
        "instances {} median-pairwise-ratio {:.3} median-iterative-ratio {:.3} max-iterative-ratio {:.3} pairwise-bound-violations {}",
        summary.count,
        summary.median_pairwise_ratio,
        summary.median_iterative_ratio,
        summary.max_iterative_ratio,
        summary.pairwise_bound_violations
    );
    s
}
