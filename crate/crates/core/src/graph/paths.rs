use serde::{Deserialize, Serialize};

use super::flow::{Flow, INF_CAP};
use super::split::{SplitDigraph, SplitNode};
use super::{Cost, EdgeId, EdgeSet, Graph, VertexId, VertexSet};
use crate::error::{Error, Result};

/// A family of openly disjoint `source`-`target` paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathBundle {
    pub source: VertexId,
    pub target: VertexId,
    pub paths: Vec<Vec<VertexId>>,
}

impl PathBundle {
    pub fn size(&self) -> usize {
        self.paths.len()
    }

    /// Every path runs from source to target along graph edges and no two
    /// paths share an interior vertex.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let mut interior = VertexSet::new();
        for p in &self.paths {
            if p.first() != Some(&self.source) || p.last() != Some(&self.target) || p.len() < 2 {
                return false;
            }
            if !p.windows(2).all(|w| g.are_adjacent(w[0], w[1])) {
                return false;
            }
            for &v in &p[1..p.len() - 1] {
                if v == self.source || v == self.target || !interior.insert(v) {
                    return false;
                }
            }
        }
        true
    }
}

/// Result of a bounded separator probe from a source set to a sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutProbe {
    /// Max-flow value, capped at the probe limit.
    pub value: usize,
    /// Inclusion-minimal source side of a minimum separator. Present only
    /// when `value` is below the limit, i.e. the flow is maximum.
    pub side: Option<VertexSet>,
    /// The separator `N(side)`.
    pub cut: Option<VertexSet>,
}

/// Edges bought by a min-cost disjoint-paths query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPurchase {
    /// Every edge on the chosen paths, free ones included.
    pub edges: EdgeSet,
    /// Cost of the chosen edges outside the free set.
    pub new_cost: Cost,
}

fn probe(
    g: &Graph,
    sources: &VertexSet,
    sink: VertexId,
    limit: usize,
    skip: Option<EdgeId>,
) -> CutProbe {
    let mut ends = sources.clone();
    ends.insert(sink);
    let mut split = SplitDigraph::for_cuts(g, &ends, skip);
    let source_node = if sources.len() == 1 {
        split.node(SplitNode::Out(sources.min().expect("non-empty")))
    } else {
        let hub = split.net.add_node();
        for x in sources.iter() {
            let out = split.node(SplitNode::Out(x));
            split.net.add_arc(hub, out, INF_CAP, 0);
        }
        hub
    };
    let sink_node = split.node(SplitNode::In(sink));
    let value = split.net.max_flow(source_node, sink_node, limit as Flow) as usize;
    debug_assert!(split.net.is_valid_flow(source_node, sink_node));
    if value >= limit {
        return CutProbe {
            value,
            side: None,
            cut: None,
        };
    }
    let reach = split.net.residual_reachable(source_node);
    let side: VertexSet = (0..g.vertex_count())
        .filter(|&v| reach[split.node(SplitNode::Out(v))])
        .collect();
    let cut = split.crossed_vertices(&reach);
    debug_assert_eq!(cut.len(), value);
    CutProbe {
        value,
        side: Some(side),
        cut: Some(cut),
    }
}

fn check_pair(g: &Graph, s: VertexId, t: VertexId) -> Result<()> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(Error::InvalidInput(format!(
            "source and target coincide ({s})"
        )));
    }
    Ok(())
}

/// Minimum vertex separator between the contracted set `sources` and
/// `sink`, probing at most `limit` units of flow.
///
/// Fails when `sink` lies in or next to `sources`, since no vertex set can
/// separate them then.
pub fn separator_probe(
    g: &Graph,
    sources: &VertexSet,
    sink: VertexId,
    limit: usize,
) -> Result<CutProbe> {
    g.check_vertex(sink)?;
    let first = sources
        .min()
        .ok_or_else(|| Error::InvalidInput("empty source set".into()))?;
    for x in sources.iter() {
        g.check_vertex(x)?;
        if x == sink || g.are_adjacent(x, sink) {
            return Err(Error::NoSeparatingCut(first, sink));
        }
    }
    Ok(probe(g, sources, sink, limit, None))
}

/// Number of openly disjoint `s`-`t` paths, capped at `cap`. A direct
/// edge counts as one path.
pub(crate) fn pair_connectivity_capped(g: &Graph, s: VertexId, t: VertexId, cap: usize) -> usize {
    if cap == 0 {
        return 0;
    }
    let single = VertexSet::singleton(s);
    match g.find_edge(s, t) {
        Some(e) => 1 + probe(g, &single, t, cap - 1, Some(e)).value,
        None => probe(g, &single, t, cap, None).value,
    }
}

/// Local vertex connectivity between `s` and `t` (direct edge counted as
/// one path).
pub fn pair_connectivity(g: &Graph, s: VertexId, t: VertexId) -> Result<usize> {
    check_pair(g, s, t)?;
    Ok(pair_connectivity_capped(g, s, t, g.vertex_count()))
}

/// Maximum family of openly disjoint `s`-`t` paths (Menger). When `s` and
/// `t` are adjacent the direct edge is reported as the path `[s, t]`.
pub fn max_openly_disjoint_paths(g: &Graph, s: VertexId, t: VertexId) -> Result<PathBundle> {
    check_pair(g, s, t)?;
    let direct = g.find_edge(s, t);
    let ends: VertexSet = [s, t].into_iter().collect();
    let mut split = SplitDigraph::for_cuts(g, &ends, direct);
    let (src, snk) = (split.node(SplitNode::Out(s)), split.node(SplitNode::In(t)));
    split.net.max_flow(src, snk, INF_CAP);
    let mut paths: Vec<Vec<VertexId>> = decompose(&split, g, s, t)
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    if direct.is_some() {
        paths.insert(0, vec![s, t]);
    }
    Ok(PathBundle {
        source: s,
        target: t,
        paths,
    })
}

/// Minimum vertex cut between non-adjacent `s` and `t`, with the
/// inclusion-minimal `s`-side `U`: `s ∈ U`, `N(U) = cut`, `t ∉ U ∪ cut`.
pub fn min_cut_side(g: &Graph, s: VertexId, t: VertexId) -> Result<(VertexSet, VertexSet)> {
    check_pair(g, s, t)?;
    if g.are_adjacent(s, t) {
        return Err(Error::NoSeparatingCut(s, t));
    }
    let p = probe(g, &VertexSet::singleton(s), t, g.vertex_count(), None);
    Ok((
        p.cut.expect("flow below vertex count"),
        p.side.expect("flow below vertex count"),
    ))
}

/// Cheapest edge set carrying `k` openly disjoint `s`-`t` paths, where
/// edges in `free` cost nothing.
pub fn min_cost_disjoint_paths(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    k: usize,
    free: &EdgeSet,
) -> Result<PathPurchase> {
    check_pair(g, s, t)?;
    if k == 0 {
        return Ok(PathPurchase {
            edges: EdgeSet::new(),
            new_cost: 0,
        });
    }
    let ends: VertexSet = [s, t].into_iter().collect();
    let mut split = SplitDigraph::for_costs(g, &ends, free);
    let (src, snk) = (split.node(SplitNode::Out(s)), split.node(SplitNode::In(t)));
    let (flow, flow_cost) = split.net.min_cost_flow(src, snk, k as Flow);
    debug_assert!(split.net.is_valid_flow(src, snk));
    if (flow as usize) < k {
        return Err(Error::Infeasible {
            source_vertex: s,
            target: t,
            achievable: flow as usize,
            required: k,
        });
    }
    let edges: EdgeSet = decompose(&split, g, s, t)
        .into_iter()
        .flat_map(|(_, e)| e)
        .collect();
    let new_cost = g.cost_excluding(&edges, free);
    debug_assert!(new_cost as i64 <= flow_cost);
    Ok(PathPurchase { edges, new_cost })
}

/// Splits the flow leaving `s_out` into `s`-`t` walks, dropping cycles
/// that return to `s`.
fn decompose(
    split: &SplitDigraph,
    g: &Graph,
    s: VertexId,
    t: VertexId,
) -> Vec<(Vec<VertexId>, Vec<EdgeId>)> {
    let net = &split.net;
    let arc_count = net.forward_arcs().count() * 2;
    let mut edge_of_arc = vec![None; arc_count];
    for e in 0..g.edge_count() {
        if let Some([a, b]) = split.edge_arcs(e) {
            edge_of_arc[a] = Some(e);
            edge_of_arc[b] = Some(e);
        }
    }
    let mut rem: Vec<Flow> = (0..arc_count)
        .map(|a| if a % 2 == 0 { net.flow(a) } else { 0 })
        .collect();
    let src = split.node(SplitNode::Out(s));
    let snk = split.node(SplitNode::In(t));
    let s_in = split.node(SplitNode::In(s));
    let next_arc = |x: usize, rem: &Vec<Flow>| {
        net.out_arcs(x)
            .iter()
            .copied()
            .find(|&a| a % 2 == 0 && rem[a] > 0)
    };
    let mut out = Vec::new();
    while next_arc(src, &rem).is_some() {
        let mut path = vec![s];
        let mut edges = Vec::new();
        let mut x = src;
        while x != snk {
            let Some(a) = next_arc(x, &rem) else {
                debug_assert!(false, "flow conservation broken during decomposition");
                return out;
            };
            rem[a] -= 1;
            let y = net.head(a);
            if let Some(e) = edge_of_arc[a] {
                if y == s_in {
                    path.truncate(1);
                    edges.clear();
                } else {
                    path.push(y / 2);
                    edges.push(e);
                }
            }
            x = y;
        }
        out.push((path, edges));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::from_edges(
            4,
            [
                (0, 1, 1),
                (0, 2, 1),
                (0, 3, 1),
                (1, 2, 1),
                (1, 3, 1),
                (2, 3, 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn complete_graph_has_three_paths() {
        let g = k4();
        let b = max_openly_disjoint_paths(&g, 0, 3).unwrap();
        assert_eq!(b.size(), 3);
        assert!(b.is_valid(&g));
        assert_eq!(b.paths[0], vec![0, 3]);
    }

    #[test]
    fn path_graph_has_one_path_and_middle_cut() {
        let g = Graph::from_edges(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        assert_eq!(max_openly_disjoint_paths(&g, 0, 2).unwrap().size(), 1);
        let (cut, side) = min_cut_side(&g, 0, 2).unwrap();
        assert_eq!(cut, VertexSet::singleton(1));
        assert_eq!(side, VertexSet::singleton(0));
    }

    #[test]
    fn two_routes_give_cut_of_two() {
        // s=0, a=1, b=2, t=3
        let g = Graph::from_edges(4, [(0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 3, 1)]).unwrap();
        let (cut, side) = min_cut_side(&g, 0, 3).unwrap();
        assert_eq!(cut.to_vec(), vec![1, 2]);
        assert_eq!(side, VertexSet::singleton(0));
    }

    #[test]
    fn adjacent_pair_rejected_for_cuts() {
        let g = k4();
        assert_eq!(min_cut_side(&g, 0, 1), Err(Error::NoSeparatingCut(0, 1)));
        assert!(matches!(
            max_openly_disjoint_paths(&g, 0, 9),
            Err(Error::InvalidVertex { vertex: 9, .. })
        ));
    }

    #[test]
    fn min_cost_single_path_is_shortest_path() {
        // 0-1-3 costs 2+2, 0-2-3 costs 1+1, 0-3 direct costs 5
        let g =
            Graph::from_edges(4, [(0, 1, 2), (1, 3, 2), (0, 2, 1), (2, 3, 1), (0, 3, 5)]).unwrap();
        let p = min_cost_disjoint_paths(&g, 0, 3, 1, &EdgeSet::new()).unwrap();
        assert_eq!(p.new_cost, 2);
        assert_eq!(p.edges, [2, 3].into_iter().collect());
        let p = min_cost_disjoint_paths(&g, 0, 3, 3, &EdgeSet::new()).unwrap();
        assert_eq!(p.new_cost, 11);
        let p = min_cost_disjoint_paths(&g, 0, 3, 0, &EdgeSet::new()).unwrap();
        assert!(p.edges.is_empty());
        let err = min_cost_disjoint_paths(&g, 0, 3, 4, &EdgeSet::new()).unwrap_err();
        assert!(matches!(
            err,
            Error::Infeasible {
                achievable: 3,
                required: 4,
                ..
            }
        ));
    }

    #[test]
    fn free_edges_cost_nothing() {
        let g = Graph::from_edges(4, [(0, 1, 2), (1, 3, 2), (0, 2, 1), (2, 3, 1)]).unwrap();
        let free: EdgeSet = [0, 1].into_iter().collect();
        let p = min_cost_disjoint_paths(&g, 0, 3, 1, &free).unwrap();
        assert_eq!(p.new_cost, 0);
        assert_eq!(p.edges, free);
    }

    #[test]
    fn contracted_sources() {
        // 0 and 1 both reach 4 through 2 and 3
        let g = Graph::from_edges(5, [(0, 2, 1), (1, 3, 1), (2, 4, 1), (3, 4, 1)]).unwrap();
        let src: VertexSet = [0, 1].into_iter().collect();
        let p = separator_probe(&g, &src, 4, 5).unwrap();
        assert_eq!(p.value, 2);
        assert_eq!(p.side.unwrap(), src);
        let capped = separator_probe(&g, &src, 4, 2).unwrap();
        assert_eq!(capped.value, 2);
        assert!(capped.side.is_none());
    }
}
