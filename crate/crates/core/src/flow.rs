//! Min-cost flow with edge demands, and the voter-to-shift-amount assignment
//! built on it.

use std::collections::VecDeque;

use crate::{Error, PriceFunction, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub capacity: i64,
    /// Least amount of flow the edge must carry.
    pub demand: i64,
    pub cost: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowNetwork {
    pub nodes: usize,
    pub source: usize,
    pub sink: usize,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowSolution {
    pub feasible: bool,
    pub cost: i64,
    /// Flow on each edge, indexed like `FlowNetwork::edges`.
    pub flow: Vec<i64>,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> FlowNetwork {
        FlowNetwork { nodes, source, sink, edges: Vec::new() }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, capacity: i64, demand: i64, cost: i64) -> usize {
        self.edges.push(Edge { from, to, capacity, demand, cost });
        self.edges.len() - 1
    }

    fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedNetwork(msg));
        if self.source >= self.nodes || self.sink >= self.nodes || self.source == self.sink {
            return bad("source and sink must be distinct nodes".into());
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.from >= self.nodes || e.to >= self.nodes {
                return bad(format!("edge {i} has an endpoint outside the network"));
            }
            if e.demand < 0 || e.demand > e.capacity {
                return bad(format!("edge {i} needs 0 ≤ demand ≤ capacity"));
            }
            if e.cost < 0 {
                return bad(format!("edge {i} has a negative cost"));
            }
        }
        Ok(())
    }
}

/// Residual graph for successive shortest paths.
struct Residual {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    cost: Vec<i64>,
}

impl Residual {
    fn new(nodes: usize) -> Residual {
        Residual { head: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new(), cost: Vec::new() }
    }

    /// Adds an arc and its reverse; returns the forward arc's id.
    fn arc(&mut self, from: usize, to: usize, cap: i64, cost: i64) -> usize {
        let id = self.to.len();
        self.head[from].push(id);
        self.to.push(to);
        self.cap.push(cap);
        self.cost.push(cost);
        self.head[to].push(id + 1);
        self.to.push(from);
        self.cap.push(0);
        self.cost.push(-cost);
        id
    }

    /// Pushes up to `limit` units from `s` to `t` along successive cheapest paths.
    fn min_cost_flow(&mut self, s: usize, t: usize, limit: i64) -> Result<(i64, i64)> {
        let n = self.head.len();
        let (mut flow, mut cost) = (0i64, 0i64);
        while flow < limit {
            // Bellman-Ford with a work queue; residual arcs may have negative cost.
            let mut dist = vec![i64::MAX; n];
            let mut via = vec![usize::MAX; n];
            let mut queued = vec![false; n];
            let mut queue = VecDeque::from([s]);
            dist[s] = 0;
            while let Some(u) = queue.pop_front() {
                queued[u] = false;
                for &a in &self.head[u] {
                    let w = self.to[a];
                    if self.cap[a] > 0 && dist[u] + self.cost[a] < dist[w] {
                        dist[w] = dist[u] + self.cost[a];
                        via[w] = a;
                        if !queued[w] {
                            queued[w] = true;
                            queue.push_back(w);
                        }
                    }
                }
            }
            if dist[t] == i64::MAX {
                break;
            }
            let mut push = limit - flow;
            let mut w = t;
            while w != s {
                let a = via[w];
                push = push.min(self.cap[a]);
                w = self.to[a ^ 1];
            }
            let mut w = t;
            while w != s {
                let a = via[w];
                self.cap[a] -= push;
                self.cap[a ^ 1] += push;
                cost = push
                    .checked_mul(self.cost[a])
                    .and_then(|c| c.checked_add(cost))
                    .ok_or_else(|| Error::Capacity("flow cost overflows 64 bits".into()))?;
                w = self.to[a ^ 1];
            }
            flow += push;
        }
        Ok((flow, cost))
    }
}

/// A cheapest flow from source to sink that meets every edge's demand and capacity.
///
/// Demands are removed in the standard way: each edge is pre-loaded with its demand,
/// the resulting imbalances are served from an auxiliary source and sink, and an
/// uncapacitated arc from sink to source lets the remaining flow circulate.
pub fn min_cost_flow(net: &FlowNetwork) -> Result<FlowSolution> {
    net.check()?;
    let n = net.nodes;
    let (aux_s, aux_t) = (n, n + 1);
    let mut g = Residual::new(n + 2);
    let mut excess = vec![0i64; n];
    let mut base_cost = 0i64;
    let mut total_cap = 0i64;
    let mut arcs = Vec::with_capacity(net.edges.len());
    for e in &net.edges {
        arcs.push(g.arc(e.from, e.to, e.capacity - e.demand, e.cost));
        excess[e.to] += e.demand;
        excess[e.from] -= e.demand;
        base_cost = e
            .demand
            .checked_mul(e.cost)
            .and_then(|c| c.checked_add(base_cost))
            .ok_or_else(|| Error::Capacity("flow cost overflows 64 bits".into()))?;
        total_cap = total_cap.saturating_add(e.capacity);
    }
    g.arc(net.sink, net.source, total_cap, 0);
    let mut required = 0i64;
    for (u, &x) in excess.iter().enumerate() {
        if x > 0 {
            g.arc(aux_s, u, x, 0);
            required += x;
        } else if x < 0 {
            g.arc(u, aux_t, -x, 0);
        }
    }
    let (pushed, cost) = g.min_cost_flow(aux_s, aux_t, required)?;
    if pushed < required {
        return Ok(FlowSolution { feasible: false, cost: 0, flow: vec![0; net.edges.len()] });
    }
    let flow = net.edges.iter().zip(&arcs).map(|(e, &a)| e.demand + g.cap[a ^ 1]).collect();
    Ok(FlowSolution { feasible: true, cost: base_cost + cost, flow })
}

/// The cheapest way to give exactly `q[j]` voters of a block a shift by `j`
/// positions; returns the total price and each voter's shift, or `None` when the
/// multiplicities do not match the block size.
pub fn cheapest_assignment(block: &[PriceFunction], q: &[u64]) -> Result<Option<(u64, Vec<usize>)>> {
    let r = block.len();
    let amounts = q.len();
    let (source, sink) = (0, r + amounts + 1);
    let mut net = FlowNetwork::new(r + amounts + 2, source, sink);
    let mut choice_edges = Vec::with_capacity(r * amounts);
    for (v, f) in block.iter().enumerate() {
        net.add_edge(source, 1 + v, 1, 1, 0);
        for j in 0..amounts {
            let price = i64::try_from(f.price(j))
                .map_err(|_| Error::Capacity("price exceeds 63 bits".into()))?;
            choice_edges.push((v, j, net.add_edge(1 + v, 1 + r + j, 1, 0, price)));
        }
    }
    for (j, &count) in q.iter().enumerate() {
        let count = i64::try_from(count).map_err(|_| Error::Capacity("multiplicity too large".into()))?;
        net.add_edge(1 + r + j, sink, count, count, 0);
    }
    let solution = min_cost_flow(&net)?;
    if !solution.feasible {
        return Ok(None);
    }
    let mut shifts = vec![0; r];
    for (v, j, e) in choice_edges {
        if solution.flow[e] == 1 {
            shifts[v] = j;
        }
    }
    Ok(Some((solution.cost as u64, shifts)))
}
