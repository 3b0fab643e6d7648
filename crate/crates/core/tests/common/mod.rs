#![allow(dead_code)]

use kconn::connectivity::{subset_connectivity, TerminalSet};
use kconn::graph::{EdgeSet, Graph, VertexId};
use kconn::solver::Instance;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random graph on `n` vertices with `tcount` pairwise non-adjacent
/// terminals. Each non-terminal pair is joined with probability `p`.
pub fn random_graph(seed: u64, n: usize, tcount: usize, p: f64) -> (Graph, TerminalSet) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ids: Vec<VertexId> = (0..n).collect();
    ids.shuffle(&mut rng);
    let t = TerminalSet::new(ids[..tcount].to_vec()).unwrap();
    let mut g = Graph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if t.contains(a) && t.contains(b) {
                continue;
            }
            if rng.gen_bool(p) {
                g.add_edge(a, b, rng.gen_range(1..=9)).unwrap();
            }
        }
    }
    (g, t)
}

/// Random graphs whose subset connectivity lies in `levels`, with the level.
pub fn graphs_at_levels(
    seed: u64,
    count: usize,
    n_range: std::ops::RangeInclusive<usize>,
    levels: &[usize],
) -> Vec<(Graph, TerminalSet, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(n_range.clone());
        let tcount = rng.gen_range(2..=n / 2 + 1).min(n - 1);
        let p = rng.gen_range(0.2..0.6);
        let (g, t) = random_graph(rng.gen(), n, tcount, p);
        let l = subset_connectivity(&g, &t);
        if levels.contains(&l) {
            out.push((g, t, l));
        }
    }
    out
}

/// Cycle on `n` vertices with `tcount` evenly spread terminals, the cycle
/// purchased, plus at least `chords` random chords of cost 1..=9 and as
/// many more as needed for subset 3-connectivity. The purchased cycle is
/// subset 2-connected with one core per terminal.
pub fn cycle_instance(seed: u64, n: usize, tcount: usize, chords: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    let mut purchased = EdgeSet::new();
    for v in 0..n {
        purchased.insert(g.add_edge(v, (v + 1) % n, rng.gen_range(1..=9)).unwrap());
    }
    let t = TerminalSet::new((0..tcount).map(|i| i * n / tcount).collect()).unwrap();
    let mut added = 0;
    while added < chords || subset_connectivity(&g, &t) < 3 {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v && !g.are_adjacent(u, v) {
            g.add_edge(u, v, rng.gen_range(1..=9)).unwrap();
            added += 1;
        }
    }
    Instance::with_purchased(g, t, 3, purchased).unwrap()
}

/// A hub terminal `0` joining `wings` wings. Each wing hangs off the hub
/// through one vertex that fans out to `cores` pendant terminals. Cheap
/// hub-terminal edges give rooted 2-connectivity from the hub while the
/// hub stays a cut vertex; costlier edges between wings make `k = 2`
/// feasible.
pub fn butterfly(seed: u64, wings: usize, cores: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(1);
    let mut purchased = EdgeSet::new();
    let mut terminals = vec![0];
    let mut mids = Vec::new();
    let mut wing_terms = Vec::new();
    for _ in 0..wings {
        let m = g.add_vertex();
        purchased.insert(g.add_edge(0, m, 1).unwrap());
        let mut mine = Vec::new();
        for _ in 0..cores {
            let a = g.add_vertex();
            let t = g.add_vertex();
            purchased.insert(g.add_edge(m, a, 1).unwrap());
            purchased.insert(g.add_edge(a, t, 1).unwrap());
            terminals.push(t);
            mine.push((a, t));
        }
        mids.push(m);
        wing_terms.push(mine);
    }
    for &t in &terminals[1..] {
        g.add_edge(0, t, rng.gen_range(1..=2)).unwrap();
    }
    for w in 0..wings {
        let next = (w + 1) % wings;
        for c in 0..cores {
            let (a, _) = wing_terms[w][c];
            let (b, _) = wing_terms[next][rng.gen_range(0..cores)];
            if a != b && !g.are_adjacent(a, b) {
                g.add_edge(a, b, rng.gen_range(7..=9)).unwrap();
            }
        }
    }
    Instance::with_purchased(g, TerminalSet::new(terminals).unwrap(), 2, purchased).unwrap()
}
