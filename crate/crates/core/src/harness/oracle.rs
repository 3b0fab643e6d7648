//! Brute-force optimum and file-level verification.

use crate::error::{Error, Result};
use crate::exact::{subset_optimum, ExactOptimum, SearchOrder};
use crate::solver::{check_feasible, Instance};

use super::format::{InstanceFile, SolutionFile};
use super::verify::{certify, Certificate};

/// Exact minimum-cost subset `k`-connected edge set. Purchased edges are
/// free and included. Refuses more than
/// [`EDGE_BOUND`](crate::exact::EDGE_BOUND) positive-cost edges.
pub fn brute_force_optimum(inst: &Instance, order: SearchOrder) -> Result<ExactOptimum> {
    inst.validate()?;
    check_feasible(inst)?;
    subset_optimum(&inst.graph, &inst.terminals, inst.k, &inst.purchased, order)?
        .ok_or_else(|| Error::Internal("feasible instance without an optimum".into()))
}

/// Certificate for `solution` plus the instance's purchased edges.
pub fn verify_solution(file: &InstanceFile, solution: &SolutionFile) -> Result<Certificate> {
    let mut edges = solution.resolve(&file.graph)?;
    edges.extend(file.purchased.iter().copied());
    Ok(certify(&file.graph, &edges, &file.terminals, file.k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::TerminalSet;
    use crate::fixtures::example_tree;
    use crate::graph::{EdgeSet, Graph};

    #[test]
    fn zero_cost_and_shortest_path() {
        let g = Graph::from_edges(4, [(0, 1, 0), (1, 3, 0), (0, 2, 1), (2, 3, 1)]).unwrap();
        let t = TerminalSet::new(vec![0, 3]).unwrap();
        let inst = Instance::new(g.clone(), t.clone(), 1).unwrap();
        assert_eq!(
            brute_force_optimum(&inst, SearchOrder::CheapestFirst)
                .unwrap()
                .cost,
            0
        );
        let g = Graph::from_edges(4, [(0, 1, 5), (1, 3, 5), (0, 2, 1), (2, 3, 2)]).unwrap();
        let inst = Instance::new(g, t, 1).unwrap();
        for order in [SearchOrder::CheapestFirst, SearchOrder::CostliestFirst] {
            assert_eq!(brute_force_optimum(&inst, order).unwrap().cost, 3);
        }
    }

    #[test]
    fn verify_full_and_empty() {
        let f = example_tree();
        let file = InstanceFile::from_instance(
            &Instance::new(f.graph.clone(), f.terminals.clone(), 1).unwrap(),
        );
        let full = SolutionFile::from_edges(&f.graph, &f.graph.all_edges());
        assert!(verify_solution(&file, &full).unwrap().pass);
        let empty = SolutionFile::from_edges(&f.graph, &EdgeSet::new());
        let cert = verify_solution(&file, &empty).unwrap();
        assert!(!cert.pass);
        assert_eq!(cert.witness, Some((5, 6)));
    }
}
