//! Graph kernels backing the solvers: integral max-flow with lower quotas
//! and bipartite matching covering one side.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

/// Flow network with per-arc capacities and lower quotas. Capacities of
/// `None` are unbounded; they are resolved to the sum of all quotas plus all
/// finite capacities, which no feasible flow can exceed when every arc out of
/// the source is finite.
#[derive(Debug, Clone)]
pub struct QuotaNetwork {
    node_count: usize,
    source: usize,
    sink: usize,
    arcs: Vec<QuotaArc>,
}

#[derive(Debug, Clone)]
pub struct QuotaArc {
    pub from: usize,
    pub to: usize,
    pub capacity: Option<u64>,
    pub lower: u64,
}

impl QuotaNetwork {
    pub fn new(node_count: usize, source: usize, sink: usize) -> Self {
        assert!(source < node_count && sink < node_count && source != sink);
        QuotaNetwork {
            node_count,
            source,
            sink,
            arcs: Vec::new(),
        }
    }

    /// Adds an arc and returns its index. Quotas must not exceed finite
    /// capacities.
    pub fn add_arc(&mut self, from: usize, to: usize, capacity: Option<u64>, lower: u64) -> usize {
        assert!(from < self.node_count && to < self.node_count);
        if let Some(cap) = capacity {
            assert!(lower <= cap, "lower quota exceeds capacity");
        }
        self.arcs.push(QuotaArc {
            from,
            to,
            capacity,
            lower,
        });
        self.arcs.len() - 1
    }

    pub fn arcs(&self) -> &[QuotaArc] {
        &self.arcs
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    fn resolved_capacity(&self, arc: &QuotaArc) -> u64 {
        match arc.capacity {
            Some(cap) => cap,
            None => {
                let quotas: u64 = self.arcs.iter().map(|a| a.lower).sum();
                let finite: u64 = self.arcs.iter().filter_map(|a| a.capacity).sum();
                quotas + finite
            }
        }
    }
}

/// Integral flow values per arc, indexed like `QuotaNetwork::arcs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowAssignment {
    pub arc_flows: Vec<u64>,
}

/// Finds an integral flow meeting every lower quota and capacity, or `None`
/// if the network is infeasible.
///
/// Uses the classical circulation transformation: each arc's quota becomes a
/// demand carried by a super-source/super-sink pair, an unbounded return arc
/// closes the circulation, and feasibility is equivalent to saturating the
/// super-source.
pub fn feasible_flow_with_quotas(net: &QuotaNetwork) -> Option<FlowAssignment> {
    let n = net.node_count;
    let super_source = n;
    let super_sink = n + 1;
    let mut dinic = Dinic::new(n + 2);

    let mut excess = alloc::vec![0i64; n];
    let mut arc_edges = Vec::with_capacity(net.arcs.len());
    for arc in &net.arcs {
        let cap = net.resolved_capacity(arc);
        arc_edges.push(dinic.add_edge(arc.from, arc.to, cap - arc.lower));
        excess[arc.to] += arc.lower as i64;
        excess[arc.from] -= arc.lower as i64;
    }
    let return_cap: u64 = net.arcs.iter().map(|a| net.resolved_capacity(a)).sum();
    dinic.add_edge(net.sink, net.source, return_cap);

    let mut demand = 0u64;
    for (node, &e) in excess.iter().enumerate() {
        if e > 0 {
            dinic.add_edge(super_source, node, e as u64);
            demand += e as u64;
        } else if e < 0 {
            dinic.add_edge(node, super_sink, (-e) as u64);
        }
    }

    let pushed = dinic.max_flow(super_source, super_sink);
    if pushed != demand {
        return None;
    }
    let arc_flows: Vec<u64> = net
        .arcs
        .iter()
        .zip(&arc_edges)
        .map(|(arc, &e)| arc.lower + dinic.flow_on(e))
        .collect();

    debug_assert!(conserves_flow(net, &arc_flows));
    Some(FlowAssignment { arc_flows })
}

fn conserves_flow(net: &QuotaNetwork, flows: &[u64]) -> bool {
    let mut balance = alloc::vec![0i64; net.node_count];
    for (arc, &f) in net.arcs.iter().zip(flows) {
        if f < arc.lower || arc.capacity.is_some_and(|c| f > c) {
            return false;
        }
        balance[arc.from] -= f as i64;
        balance[arc.to] += f as i64;
    }
    balance
        .iter()
        .enumerate()
        .all(|(node, &b)| b == 0 || node == net.source || node == net.sink)
}

struct Edge {
    to: usize,
    cap: u64,
}

/// Plain Dinic max-flow on u64 capacities. Edges are stored in pairs so the
/// reverse edge of edge `e` is `e ^ 1`.
struct Dinic {
    adj: Vec<Vec<usize>>,
    edges: Vec<Edge>,
    level: Vec<u32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic {
            adj: alloc::vec![Vec::new(); n],
            edges: Vec::new(),
            level: alloc::vec![0; n],
            iter: alloc::vec![0; n],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: u64) -> usize {
        let e = self.edges.len();
        self.edges.push(Edge { to, cap });
        self.edges.push(Edge { to: from, cap: 0 });
        self.adj[from].push(e);
        self.adj[to].push(e + 1);
        e
    }

    /// Flow pushed through forward edge `e` equals the residual on its twin.
    fn flow_on(&self, e: usize) -> u64 {
        self.edges[e ^ 1].cap
    }

    fn bfs(&mut self, source: usize, sink: usize) -> bool {
        const UNSEEN: u32 = u32::MAX;
        self.level.fill(UNSEEN);
        self.level[source] = 0;
        let mut queue = alloc::collections::VecDeque::new();
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let edge = &self.edges[e];
                if edge.cap > 0 && self.level[edge.to] == UNSEEN {
                    self.level[edge.to] = self.level[u] + 1;
                    queue.push_back(edge.to);
                }
            }
        }
        self.level[sink] != UNSEEN
    }

    fn dfs(&mut self, u: usize, sink: usize, limit: u64) -> u64 {
        if u == sink {
            return limit;
        }
        while self.iter[u] < self.adj[u].len() {
            let e = self.adj[u][self.iter[u]];
            let (to, cap) = (self.edges[e].to, self.edges[e].cap);
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let pushed = self.dfs(to, sink, limit.min(cap));
                if pushed > 0 {
                    self.edges[e].cap -= pushed;
                    self.edges[e ^ 1].cap += pushed;
                    return pushed;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> u64 {
        let mut total = 0;
        while self.bfs(source, sink) {
            self.iter.fill(0);
            loop {
                let pushed = self.dfs(source, sink, u64::MAX);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }
}

/// Bipartite graph with agents on the left and goods on the right.
#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    left_count: usize,
    right_count: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left_count: usize, right_count: usize) -> Self {
        BipartiteGraph {
            left_count,
            right_count,
            adj: alloc::vec![Vec::new(); left_count],
        }
    }

    pub fn add_edge(&mut self, left: usize, right: usize) {
        assert!(left < self.left_count && right < self.right_count);
        self.adj[left].push(right);
    }

    pub fn left_count(&self) -> usize {
        self.left_count
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }
}

/// Maximum bipartite matching via augmenting paths; returns the left-to-right
/// assignment iff it saturates every left node, `None` otherwise.
pub fn matching_covering_left(graph: &BipartiteGraph) -> Option<Vec<usize>> {
    let mut match_right: Vec<Option<usize>> = alloc::vec![None; graph.right_count];
    let mut matched = 0;
    for left in 0..graph.left_count {
        let mut visited = BTreeSet::new();
        if augment(graph, left, &mut visited, &mut match_right) {
            matched += 1;
        }
    }
    if matched < graph.left_count {
        return None;
    }
    let mut match_left = alloc::vec![usize::MAX; graph.left_count];
    for (right, owner) in match_right.iter().enumerate() {
        if let Some(left) = owner {
            match_left[*left] = right;
        }
    }
    Some(match_left)
}

fn augment(
    graph: &BipartiteGraph,
    left: usize,
    visited: &mut BTreeSet<usize>,
    match_right: &mut [Option<usize>],
) -> bool {
    for &right in &graph.adj[left] {
        if !visited.insert(right) {
            continue;
        }
        if match_right[right].is_none()
            || augment(graph, match_right[right].unwrap(), visited, match_right)
        {
            match_right[right] = Some(left);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_quota_network_is_feasible() {
        let mut net = QuotaNetwork::new(4, 0, 1);
        net.add_arc(2, 3, Some(1), 0);
        let flow = feasible_flow_with_quotas(&net).unwrap();
        assert_eq!(flow.arc_flows, alloc::vec![0]);
    }

    #[test]
    fn two_goods_two_agents_unit_quotas() {
        // source 0, sink 1, goods 2-3, agents 4-5, all approval arcs present
        let mut net = QuotaNetwork::new(6, 0, 1);
        net.add_arc(0, 2, Some(1), 0);
        net.add_arc(0, 3, Some(1), 0);
        for good in [2, 3] {
            for agent in [4, 5] {
                net.add_arc(good, agent, Some(1), 0);
            }
        }
        let a0 = net.add_arc(4, 1, None, 1);
        let a1 = net.add_arc(5, 1, None, 1);
        let flow = feasible_flow_with_quotas(&net).unwrap();
        assert_eq!(flow.arc_flows[a0], 1);
        assert_eq!(flow.arc_flows[a1], 1);
    }

    #[test]
    fn one_good_two_unit_quotas_is_infeasible() {
        let mut net = QuotaNetwork::new(5, 0, 1);
        net.add_arc(0, 2, Some(1), 0);
        net.add_arc(2, 3, Some(1), 0);
        net.add_arc(2, 4, Some(1), 0);
        net.add_arc(3, 1, None, 1);
        net.add_arc(4, 1, None, 1);
        assert!(feasible_flow_with_quotas(&net).is_none());
    }

    #[test]
    fn matching_empty_left_is_covered() {
        let graph = BipartiteGraph::new(0, 3);
        assert_eq!(matching_covering_left(&graph), Some(alloc::vec![]));
    }

    #[test]
    fn matching_complete_two_by_two() {
        let mut graph = BipartiteGraph::new(2, 2);
        for l in 0..2 {
            for r in 0..2 {
                graph.add_edge(l, r);
            }
        }
        let matching = matching_covering_left(&graph).unwrap();
        assert_ne!(matching[0], matching[1]);
    }

    #[test]
    fn matching_hall_violation() {
        let mut graph = BipartiteGraph::new(2, 2);
        graph.add_edge(0, 1);
        graph.add_edge(1, 1);
        assert_eq!(matching_covering_left(&graph), None);
    }
}
