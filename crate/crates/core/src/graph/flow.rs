use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

pub(crate) type Flow = i64;
pub(crate) type FlowCost = i64;

pub(crate) const INF_CAP: Flow = Flow::MAX / 4;
const INF_DIST: FlowCost = FlowCost::MAX / 4;

/// Residual network with paired arcs: arc `a ^ 1` is the reverse of `a`.
#[derive(Debug, Clone)]
pub(crate) struct FlowNetwork {
    out: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<Flow>,
    cost: Vec<FlowCost>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        Self {
            out: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            cost: Vec::new(),
        }
    }

    pub fn add_node(&mut self) -> usize {
        self.out.push(Vec::new());
        self.out.len() - 1
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: Flow, cost: FlowCost) -> usize {
        let id = self.to.len();
        self.out[from].push(id);
        self.to.push(to);
        self.cap.push(cap);
        self.cost.push(cost);
        self.out[to].push(id + 1);
        self.to.push(from);
        self.cap.push(0);
        self.cost.push(-cost);
        id
    }

    pub fn head(&self, arc: usize) -> usize {
        self.to[arc]
    }

    pub fn tail(&self, arc: usize) -> usize {
        self.to[arc ^ 1]
    }

    /// Flow currently pushed along forward arc `arc`.
    pub fn flow(&self, arc: usize) -> Flow {
        self.cap[arc ^ 1]
    }

    pub fn arc_cost(&self, arc: usize) -> FlowCost {
        self.cost[arc]
    }

    pub fn out_arcs(&self, node: usize) -> &[usize] {
        &self.out[node]
    }

    /// Forward arcs only (even ids).
    pub fn forward_arcs(&self) -> impl Iterator<Item = usize> {
        (0..self.to.len()).step_by(2)
    }

    /// Pushes BFS-shortest augmenting paths until `limit` units are sent or
    /// the sink becomes unreachable. Returns the total flow.
    pub fn max_flow(&mut self, source: usize, sink: usize, limit: Flow) -> Flow {
        let n = self.out.len();
        let mut total = 0;
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        while total < limit {
            parent.iter_mut().for_each(|p| *p = usize::MAX);
            queue.clear();
            queue.push_back(source);
            let mut seen = vec![false; n];
            seen[source] = true;
            'bfs: while let Some(x) = queue.pop_front() {
                for &a in &self.out[x] {
                    let y = self.to[a];
                    if self.cap[a] > 0 && !seen[y] {
                        seen[y] = true;
                        parent[y] = a;
                        if y == sink {
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                }
            }
            if !seen[sink] {
                break;
            }
            let mut push = limit - total;
            let mut y = sink;
            while y != source {
                let a = parent[y];
                push = push.min(self.cap[a]);
                y = self.to[a ^ 1];
            }
            let mut y = sink;
            while y != source {
                let a = parent[y];
                self.cap[a] -= push;
                self.cap[a ^ 1] += push;
                y = self.to[a ^ 1];
            }
            total += push;
        }
        total
    }

    /// Nodes reachable from `source` through arcs with positive residual.
    pub fn residual_reachable(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut stack = vec![source];
        while let Some(x) = stack.pop() {
            for &a in &self.out[x] {
                let y = self.to[a];
                if self.cap[a] > 0 && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Successive shortest paths with Dijkstra on reduced costs. Must be
    /// called on a network without flow, whose arc costs are non-negative. Sends up to `amount` units and
    /// returns `(flow, cost)`.
    pub fn min_cost_flow(&mut self, source: usize, sink: usize, amount: Flow) -> (Flow, FlowCost) {
        debug_assert!(self.forward_arcs().all(|a| self.cost[a] >= 0));
        let n = self.out.len();
        let mut potential = vec![0 as FlowCost; n];
        let mut dist = vec![INF_DIST; n];
        let mut parent = vec![usize::MAX; n];
        let (mut flow, mut cost) = (0, 0);
        while flow < amount {
            dist.iter_mut().for_each(|d| *d = INF_DIST);
            parent.iter_mut().for_each(|p| *p = usize::MAX);
            dist[source] = 0;
            let mut heap = BinaryHeap::new();
            heap.push(Reverse((0, source)));
            while let Some(Reverse((d, x))) = heap.pop() {
                if d > dist[x] {
                    continue;
                }
                for &a in &self.out[x] {
                    if self.cap[a] <= 0 {
                        continue;
                    }
                    let y = self.to[a];
                    let reduced = self.cost[a] + potential[x] - potential[y];
                    debug_assert!(reduced >= 0, "negative reduced cost");
                    let nd = d + reduced;
                    if nd < dist[y] {
                        dist[y] = nd;
                        parent[y] = a;
                        heap.push(Reverse((nd, y)));
                    }
                }
            }
            if dist[sink] >= INF_DIST {
                break;
            }
            for v in 0..n {
                if dist[v] < INF_DIST {
                    potential[v] += dist[v];
                }
            }
            let mut push = amount - flow;
            let mut y = sink;
            while y != source {
                let a = parent[y];
                push = push.min(self.cap[a]);
                y = self.to[a ^ 1];
            }
            let mut y = sink;
            while y != source {
                let a = parent[y];
                self.cap[a] -= push;
                self.cap[a ^ 1] += push;
                cost += push * self.cost[a];
                y = self.to[a ^ 1];
            }
            flow += push;
        }
        (flow, cost)
    }

    /// Checks conservation at every node except `source` and `sink`, and
    /// that no forward arc carries more than its original capacity.
    pub fn is_valid_flow(&self, source: usize, sink: usize) -> bool {
        let mut balance = vec![0 as Flow; self.out.len()];
        for a in self.forward_arcs() {
            let f = self.flow(a);
            if f < 0 {
                return false;
            }
            balance[self.tail(a)] -= f;
            balance[self.head(a)] += f;
        }
        balance
            .iter()
            .enumerate()
            .all(|(v, &b)| v == source || v == sink || b == 0)
    }
}
