mod common;

use kconn::connectivity::{is_subset_connected, subset_connectivity, MaskGraph};
use kconn::exact::{subset_optimum, SearchOrder};
use kconn::graph::EdgeSet;
use kconn::graph::{max_openly_disjoint_paths, min_cut_side, pair_connectivity};
use kconn::harness::format::{FileFormat, InstanceFile};
use kconn::harness::generate::{generate, GenModel, GenSpec};
use kconn::solver::{solve, Instance, SolverConfig};
use proptest::prelude::*;

fn small_graph() -> impl Strategy<Value = (u64, usize, usize, f64)> {
    (any::<u64>(), 5usize..=9)
        .prop_flat_map(|(seed, n)| (Just(seed), Just(n), 2..=n / 2 + 1, 0.2f64..0.7))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn menger_duality((seed, n, tc, p) in small_graph()) {
        let (g, t) = common::random_graph(seed, n, tc, p);
        let (s, u) = (t.as_slice()[0], t.as_slice()[1]);
        let kappa = pair_connectivity(&g, s, u).unwrap();
        let bundle = max_openly_disjoint_paths(&g, s, u).unwrap();
        prop_assert!(bundle.is_valid(&g));
        prop_assert_eq!(bundle.size(), kappa);
        let (cut, side) = min_cut_side(&g, s, u).unwrap();
        prop_assert_eq!(cut.len(), kappa);
        prop_assert!(side.contains(s) && !side.contains(u) && !cut.contains(u));
        prop_assert_eq!(kconn::connectivity::neighbors(&g, &side), cut);
    }

    #[test]
    fn neighborhood_is_submodular((seed, n, tc, p) in small_graph(), a in any::<u32>(), b in any::<u32>()) {
        let (g, t) = common::random_graph(seed, n, tc, p);
        let mg = MaskGraph::new(&g, &t).unwrap();
        let (a, b) = (a & mg.all(), b & mg.all());
        let size = |m: u32| mg.neighbors(m).count_ones();
        prop_assert!(size(a) + size(b) >= size(a & b) + size(a | b));
    }

    #[test]
    fn connectivity_matches_deficient_sets((seed, n, tc, p) in small_graph()) {
        let (g, t) = common::random_graph(seed, n, tc, p);
        let mg = MaskGraph::new(&g, &t).unwrap();
        let l = subset_connectivity(&g, &t);
        prop_assert!(mg.deficient_masks(l).is_empty());
        prop_assert!(!mg.deficient_masks(l + 1).is_empty());
        prop_assert!(is_subset_connected(&g, &t, l));
        prop_assert!(!is_subset_connected(&g, &t, l + 1));
    }

    #[test]
    fn adding_an_edge_never_raises_the_optimum((seed, n, tc, p) in small_graph(), cost in 0u64..5) {
        let (g, t) = common::random_graph(seed, n.min(7), tc.min(3), p);
        let k = subset_connectivity(&g, &t);
        prop_assume!(k >= 1 && g.edge_count() <= 14);
        let none = EdgeSet::new();
        let before = subset_optimum(&g, &t, k, &none, SearchOrder::CheapestFirst).unwrap().unwrap();
        let missing = (0..g.vertex_count())
            .flat_map(|a| (a + 1..g.vertex_count()).map(move |b| (a, b)))
            .find(|&(a, b)| !g.are_adjacent(a, b) && !(t.contains(a) && t.contains(b)));
        prop_assume!(missing.is_some());
        let (a, b) = missing.unwrap();
        let mut h = g.clone();
        h.add_edge(a, b, cost).unwrap();
        let after = subset_optimum(&h, &t, k, &none, SearchOrder::CheapestFirst).unwrap().unwrap();
        prop_assert!(after.cost <= before.cost);
    }

    #[test]
    fn solver_output_is_feasible_and_not_below_optimum((seed, n, tc, p) in small_graph()) {
        let (g, t) = common::random_graph(seed, n.min(8), tc, p);
        let k = subset_connectivity(&g, &t).min(3);
        prop_assume!(k >= 1 && g.edge_count() <= 18);
        let inst = Instance::new(g.clone(), t.clone(), k).unwrap();
        let rep = solve(&inst, &SolverConfig::default()).unwrap();
        prop_assert!(rep.is_verified());
        prop_assert!(is_subset_connected(&g.subgraph(&rep.solution), &t, k));
        let opt = subset_optimum(&g, &t, k, &EdgeSet::new(), SearchOrder::CheapestFirst).unwrap().unwrap();
        prop_assert!(rep.total_cost >= opt.cost);
    }

    #[test]
    fn instance_files_round_trip(model in 0usize..3, n in 12usize..30, k in 1usize..=3, seed in any::<u64>()) {
        let spec = GenSpec::new(GenModel::ALL[model], n, 4, k, seed);
        let file = generate(&spec).unwrap().file;
        for format in [FileFormat::Text, FileFormat::Json] {
            let back = InstanceFile::parse(&file.render(format)).unwrap();
            prop_assert_eq!(back.to_doc(), file.to_doc());
        }
    }

    #[test]
    fn generation_is_deterministic(model in 0usize..3, n in 12usize..30, k in 1usize..=3, seed in any::<u64>()) {
        let spec = GenSpec::new(GenModel::ALL[model], n, 4, k, seed);
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        prop_assert_eq!(a.file.render_text(), b.file.render_text());
        if a.feasible_by_construction {
            let inst = a.file.to_instance().unwrap();
            prop_assert!(is_subset_connected(&inst.graph, &inst.terminals, k));
        }
    }
}
