//! Seeded instance generators.
//!
//! Every model embeds a feasibility skeleton: the non-terminal vertices
//! outside the model's own structure are split into `k` groups, each group
//! is joined into a random path, and every terminal is attached to one
//! vertex of each group. Terminal pairs then have `k` openly disjoint
//! routes, one per group.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::connectivity::TerminalSet;
use crate::error::{Error, Result};
use crate::graph::{Cost, EdgeSet, Graph, VertexId};

use super::format::InstanceFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenModel {
    /// Points in the unit square, joined when closer than a radius.
    RandomGeometric,
    /// The `k`-th power of a random Hamiltonian cycle.
    PowerOfKCore,
    /// A rooted tree with terminals at its leaves.
    PaddedTree,
}

impl GenModel {
    pub const ALL: [GenModel; 3] = [
        GenModel::RandomGeometric,
        GenModel::PowerOfKCore,
        GenModel::PaddedTree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GenModel::RandomGeometric => "random-geometric",
            GenModel::PowerOfKCore => "power-of-k-core",
            GenModel::PaddedTree => "padded-tree",
        }
    }
}

impl fmt::Display for GenModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GenModel::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown model {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CostModel {
    Unit,
    Uniform {
        min: Cost,
        max: Cost,
    },
    /// Rounded Euclidean length; random-geometric only.
    Distance {
        scale: Cost,
    },
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel::Uniform { min: 1, max: 9 }
    }
}

impl FromStr for CostModel {
    type Err = Error;
    /// `unit`, `uniform:MIN:MAX` or `distance:SCALE`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("bad cost model {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let num = |w: &str| w.parse::<Cost>().map_err(|_| bad());
        match parts.as_slice() {
            ["unit"] => Ok(CostModel::Unit),
            ["uniform", a, b] => Ok(CostModel::Uniform {
                min: num(a)?,
                max: num(b)?,
            }),
            ["distance", s] => Ok(CostModel::Distance { scale: num(s)? }),
            _ => Err(bad()),
        }
    }
}

/// One branch of a padded tree: a path of `depth` internal vertices below
/// the root whose last vertex carries `leaves` terminals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub depth: usize,
    pub leaves: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub model: GenModel,
    pub n: usize,
    pub terminals: usize,
    pub k: usize,
    pub costs: CostModel,
    pub seed: u64,
    /// Fixed branch layout for the padded tree; random when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branches: Option<Vec<Branch>>,
}

impl GenSpec {
    pub fn new(model: GenModel, n: usize, terminals: usize, k: usize, seed: u64) -> Self {
        Self {
            model,
            n,
            terminals,
            k,
            costs: CostModel::default(),
            seed,
            branches: None,
        }
    }

    /// The example tree: root `0` with branches `r-v1-{t1,t2}`,
    /// `r-v2-v3-t3` and `r-v4-t4`, unit costs, `k = 1`.
    pub fn example_tree() -> Self {
        Self {
            model: GenModel::PaddedTree,
            n: 9,
            terminals: 4,
            k: 1,
            costs: CostModel::Unit,
            seed: 0,
            branches: Some(vec![
                Branch {
                    depth: 1,
                    leaves: 2,
                },
                Branch {
                    depth: 2,
                    leaves: 1,
                },
                Branch {
                    depth: 1,
                    leaves: 1,
                },
            ]),
        }
    }
}

/// A generated instance file. Padded trees carry their root.
#[derive(Debug, Clone)]
pub struct Generated {
    pub file: InstanceFile,
    /// Always true for the current models; kept so callers can filter.
    pub feasible_by_construction: bool,
}

/// Edge list keyed by endpoints, so models and skeleton never collide.
struct Builder {
    n: usize,
    edges: BTreeMap<(VertexId, VertexId), usize>,
    order: Vec<(VertexId, VertexId, Cost)>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Self {
            n,
            edges: BTreeMap::new(),
            order: Vec::new(),
        }
    }

    fn add(&mut self, u: VertexId, v: VertexId, cost: Cost) {
        let key = (u.min(v), u.max(v));
        if u != v && !self.edges.contains_key(&key) {
            self.edges.insert(key, self.order.len());
            self.order.push((u, v, cost));
        }
    }

    fn finish(self) -> Graph {
        Graph::from_edges(self.n, self.order).expect("builder keeps the graph simple")
    }
}

fn draw_cost(rng: &mut ChaCha8Rng, costs: CostModel, length: Option<f64>) -> Cost {
    match costs {
        CostModel::Unit => 1,
        CostModel::Uniform { min, max } => rng.gen_range(min..=max),
        CostModel::Distance { scale } => {
            let d = length.expect("distance costs are checked up front");
            (d * scale as f64).round() as Cost + 1
        }
    }
}

fn check(spec: &GenSpec) -> Result<()> {
    let bad = |m: String| Err(Error::InvalidInput(m));
    if spec.k == 0 {
        return bad("k must be at least 1".into());
    }
    if spec.terminals < 2 || spec.terminals > spec.n {
        return bad(format!(
            "{} terminals do not fit {} vertices",
            spec.terminals, spec.n
        ));
    }
    if spec.n - spec.terminals < spec.k {
        return bad(format!(
            "need at least k = {} non-terminals, have {}",
            spec.k,
            spec.n - spec.terminals
        ));
    }
    if let CostModel::Uniform { min, max } = spec.costs {
        if min > max {
            return bad(format!("empty cost range {min}..={max}"));
        }
    }
    if matches!(spec.costs, CostModel::Distance { .. }) && spec.model != GenModel::RandomGeometric {
        return bad("distance costs need the random-geometric model".into());
    }
    Ok(())
}

/// Attaches every terminal to one vertex of each of `k` disjoint random
/// paths over `pool`.
fn skeleton(
    rng: &mut ChaCha8Rng,
    b: &mut Builder,
    pool: &[VertexId],
    terminals: &[VertexId],
    k: usize,
    cost: &mut dyn FnMut(&mut ChaCha8Rng, VertexId, VertexId) -> Cost,
) {
    let mut pool = pool.to_vec();
    pool.shuffle(rng);
    let groups: Vec<&[VertexId]> = (0..k)
        .map(|i| &pool[i * pool.len() / k..(i + 1) * pool.len() / k])
        .collect();
    for group in groups {
        for w in group.windows(2) {
            let c = cost(rng, w[0], w[1]);
            b.add(w[0], w[1], c);
        }
        for &t in terminals {
            let v = group[rng.gen_range(0..group.len())];
            let c = cost(rng, t, v);
            b.add(t, v, c);
        }
    }
}

pub fn generate(spec: &GenSpec) -> Result<Generated> {
    check(spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (graph, terminals, root) = match spec.model {
        GenModel::RandomGeometric => random_geometric(spec, &mut rng),
        GenModel::PowerOfKCore => power_of_cycle(spec, &mut rng),
        GenModel::PaddedTree => padded_tree(spec, &mut rng)?,
    };
    let file = InstanceFile {
        graph,
        terminals: TerminalSet::new(terminals)?,
        k: spec.k,
        root,
        purchased: EdgeSet::new(),
    };
    Ok(Generated {
        file,
        feasible_by_construction: true,
    })
}

fn pick_terminals(rng: &mut ChaCha8Rng, n: usize, count: usize) -> (Vec<VertexId>, Vec<VertexId>) {
    let mut ids: Vec<VertexId> = (0..n).collect();
    ids.shuffle(rng);
    let mut terminals = ids[..count].to_vec();
    let mut others = ids[count..].to_vec();
    terminals.sort_unstable();
    others.sort_unstable();
    (terminals, others)
}

fn random_geometric(
    spec: &GenSpec,
    rng: &mut ChaCha8Rng,
) -> (Graph, Vec<VertexId>, Option<VertexId>) {
    let n = spec.n;
    let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen(), rng.gen())).collect();
    let dist = |u: VertexId, v: VertexId| {
        let (a, b) = (points[u], points[v]);
        ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
    };
    let radius = (2.0 * (n as f64).ln().max(1.0) / n as f64).sqrt();
    let (terminals, others) = pick_terminals(rng, n, spec.terminals);
    let mut b = Builder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let d = dist(u, v);
            if d <= radius {
                let c = draw_cost(rng, spec.costs, Some(d));
                b.add(u, v, c);
            }
        }
    }
    let costs = spec.costs;
    skeleton(
        rng,
        &mut b,
        &others,
        &terminals,
        spec.k,
        &mut |rng, u, v| draw_cost(rng, costs, Some(dist(u, v))),
    );
    (b.finish(), terminals, None)
}

fn power_of_cycle(
    spec: &GenSpec,
    rng: &mut ChaCha8Rng,
) -> (Graph, Vec<VertexId>, Option<VertexId>) {
    let n = spec.n;
    let mut cycle: Vec<VertexId> = (0..n).collect();
    cycle.shuffle(rng);
    let (terminals, others) = pick_terminals(rng, n, spec.terminals);
    let mut b = Builder::new(n);
    for i in 0..n {
        for step in 1..=spec.k.min(n / 2) {
            let c = draw_cost(rng, spec.costs, None);
            b.add(cycle[i], cycle[(i + step) % n], c);
        }
    }
    let costs = spec.costs;
    skeleton(
        rng,
        &mut b,
        &others,
        &terminals,
        spec.k,
        &mut |rng, _, _| draw_cost(rng, costs, None),
    );
    (b.finish(), terminals, None)
}

fn random_branches(rng: &mut ChaCha8Rng, internal: usize, leaves: usize) -> Vec<Branch> {
    let count = rng.gen_range(1..=internal.min(leaves));
    let mut out = vec![
        Branch {
            depth: 1,
            leaves: 1
        };
        count
    ];
    for _ in count..internal {
        out[rng.gen_range(0..count)].depth += 1;
    }
    for _ in count..leaves {
        out[rng.gen_range(0..count)].leaves += 1;
    }
    out
}

/// Vertex `0` is the root. Internal vertices follow branch by branch, then
/// the terminals in branch order. Extra vertices beyond the tree feed the
/// skeleton when `k > 1`.
fn padded_tree(
    spec: &GenSpec,
    rng: &mut ChaCha8Rng,
) -> Result<(Graph, Vec<VertexId>, Option<VertexId>)> {
    let n = spec.n;
    let tcount = spec.terminals;
    let branches = match &spec.branches {
        Some(b) => b.clone(),
        None => {
            let spare = n - tcount - 1;
            let internal = if spec.k > 1 {
                spare - (spare * (spec.k - 1) / spec.k)
            } else {
                spare
            };
            if internal == 0 {
                return Err(Error::InvalidInput(
                    "padded tree needs an internal vertex".into(),
                ));
            }
            random_branches(rng, internal, tcount)
        }
    };
    let internal: usize = branches.iter().map(|b| b.depth).sum();
    let leaves: usize = branches.iter().map(|b| b.leaves).sum();
    if leaves != tcount || branches.iter().any(|b| b.depth == 0 || b.leaves == 0) {
        return Err(Error::InvalidInput(
            "branch layout does not match the terminal count".into(),
        ));
    }
    if 1 + internal + tcount > n {
        return Err(Error::InvalidInput(
            "branch layout does not fit the vertex count".into(),
        ));
    }
    let first_terminal = 1 + internal;
    let terminals: Vec<VertexId> = (first_terminal..first_terminal + tcount).collect();
    let mut b = Builder::new(n);
    let (mut next_inner, mut next_leaf) = (1, first_terminal);
    for br in &branches {
        let mut prev = 0;
        for _ in 0..br.depth {
            let c = draw_cost(rng, spec.costs, None);
            b.add(prev, next_inner, c);
            prev = next_inner;
            next_inner += 1;
        }
        for _ in 0..br.leaves {
            let c = draw_cost(rng, spec.costs, None);
            b.add(prev, next_leaf, c);
            next_leaf += 1;
        }
    }
    if spec.k > 1 {
        let pool: Vec<VertexId> = (first_terminal + tcount..n).collect();
        if pool.len() < spec.k - 1 {
            return Err(Error::InvalidInput(format!(
                "padding for k = {} needs {} spare vertices, have {}",
                spec.k,
                spec.k - 1,
                pool.len()
            )));
        }
        let costs = spec.costs;
        skeleton(
            rng,
            &mut b,
            &pool,
            &terminals,
            spec.k - 1,
            &mut |rng, _, _| draw_cost(rng, costs, None),
        );
    }
    Ok((b.finish(), terminals, Some(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::is_subset_connected;
    use crate::fixtures::example_tree;

    #[test]
    fn example_tree_preset_matches_fixture() {
        let g = generate(&GenSpec::example_tree()).unwrap();
        let f = example_tree();
        assert_eq!(g.file.graph.edges(), f.graph.edges());
        assert_eq!(g.file.terminals, f.terminals);
        assert_eq!(g.file.root, Some(f.r));
    }

    #[test]
    fn deterministic_and_feasible() {
        for model in GenModel::ALL {
            for k in 1..=3 {
                let mut spec = GenSpec::new(model, 20, 6, k, 11);
                if model == GenModel::RandomGeometric {
                    spec.costs = CostModel::Distance { scale: 100 };
                }
                let a = generate(&spec).unwrap().file;
                let b = generate(&spec).unwrap().file;
                assert_eq!(a.render_text(), b.render_text(), "{model}");
                assert!(
                    is_subset_connected(&a.graph, &a.terminals, k),
                    "{model} k={k}"
                );
            }
        }
    }

    #[test]
    fn inconsistent_specs() {
        assert!(generate(&GenSpec::new(GenModel::RandomGeometric, 5, 6, 1, 0)).is_err());
        assert!(generate(&GenSpec::new(GenModel::RandomGeometric, 6, 5, 2, 0)).is_err());
        let mut spec = GenSpec::new(GenModel::PaddedTree, 10, 3, 1, 0);
        spec.costs = CostModel::Distance { scale: 10 };
        assert!(generate(&spec).is_err());
        assert_eq!(
            "uniform:2:5".parse::<CostModel>().unwrap(),
            CostModel::Uniform { min: 2, max: 5 }
        );
    }
}
