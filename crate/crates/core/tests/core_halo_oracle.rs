mod common;

use kconn::connectivity::{neighbors, subset_connectivity};
use kconn::core_halo::{compute_core_records, oracle_structure};
use proptest::prelude::*;

#[test]
fn flow_records_match_enumeration() {
    for (i, (g, t, l)) in common::graphs_at_levels(11, 150, 5..=12, &[1, 2])
        .into_iter()
        .enumerate()
    {
        let oracle = oracle_structure(&g, &t, l).unwrap();
        let flow = compute_core_records(&g, &t, l).unwrap();
        let a: Vec<_> = oracle
            .records
            .iter()
            .map(|r| (&r.core, &r.halo_set))
            .collect();
        let b: Vec<_> = flow.iter().map(|r| (&r.core, &r.halo_set)).collect();
        assert_eq!(a, b, "instance {i}: {g:?} {t:?} level {l}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn records_agree_and_are_well_formed(seed in any::<u64>(), n in 5usize..=11, p in 0.2f64..0.7) {
        let (g, t) = common::random_graph(seed, n, 2 + seed as usize % (n / 2), p);
        let l = subset_connectivity(&g, &t);
        let flow = compute_core_records(&g, &t, l).unwrap();
        let oracle = oracle_structure(&g, &t, l).unwrap();
        prop_assert_eq!(flow.len(), oracle.records.len());
        for (a, b) in flow.iter().zip(&oracle.records) {
            prop_assert_eq!(&a.core, &b.core);
            prop_assert_eq!(&a.halo_set, &b.halo_set);
        }
        for (i, r) in flow.iter().enumerate() {
            prop_assert!(r.core.is_subset(&r.halo_set));
            prop_assert_eq!(&r.halo_neighbors, &neighbors(&g, &r.halo_set));
            prop_assert!(r.halo_neighbors.len() <= l);
            prop_assert!(t.count_in(&r.core) >= 1);
            for s in &flow[i + 1..] {
                prop_assert!(r.core.is_disjoint(&s.core));
            }
        }
    }
}
