//! Exact vertex and edge connectivity via unit-capacity max-flow, a
//! brute-force oracle for small graphs, and the removal-resilience
//! certificate for constructed graphs.

use std::collections::VecDeque;

use serde::Serialize;

use crate::constructor::{construct_plan, select_case, ConstructionPlan};
use crate::error::ConnectivityError;
use crate::graph::Graph;

/// `vertex_connectivity <= edge_connectivity <= min_degree` always holds.
/// Cuts are empty when the graph is already disconnected, and the vertex cut
/// is empty for complete graphs (connectivity `n - 1` by convention).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub vertex_connectivity: usize,
    pub edge_connectivity: usize,
    pub min_degree: usize,
    pub vertex_cut: Vec<usize>,
    pub edge_cut: Vec<(usize, usize)>,
}

/// A connectivity value with a minimum cut realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut<T> {
    pub value: usize,
    pub witness: Vec<T>,
}

const BIG: u32 = u32::MAX / 4;

/// Unit-capacity flow network with Dinic augmentation. `reset` restores the
/// original capacities so one network serves many source/sink pairs.
struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    base: Vec<u32>,
    cap: Vec<u32>,
    level: Vec<u32>,
    next: Vec<usize>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            base: Vec::new(),
            cap: Vec::new(),
            level: vec![0; nodes],
            next: vec![0; nodes],
        }
    }

    fn add_arc(&mut self, u: usize, v: usize, cap: u32, rev_cap: u32) {
        self.adj[u].push(self.to.len());
        self.to.push(v);
        self.base.push(cap);
        self.adj[v].push(self.to.len());
        self.to.push(u);
        self.base.push(rev_cap);
    }

    fn reset(&mut self) {
        self.cap.clear();
        self.cap.extend_from_slice(&self.base);
    }

    fn build_levels(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = u32::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let v = self.to[a];
                if self.cap[a] > 0 && self.level[v] == u32::MAX {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[t] != u32::MAX
    }

    fn push(&mut self, u: usize, t: usize, want: u32) -> u32 {
        if u == t {
            return want;
        }
        while self.next[u] < self.adj[u].len() {
            let a = self.adj[u][self.next[u]];
            let v = self.to[a];
            if self.cap[a] > 0 && self.level[v] == self.level[u] + 1 {
                let got = self.push(v, t, want.min(self.cap[a]));
                if got > 0 {
                    self.cap[a] -= got;
                    self.cap[a ^ 1] += got;
                    return got;
                }
            }
            self.next[u] += 1;
        }
        0
    }

    /// Max flow from the original capacities, stopping once it reaches `limit`.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        self.reset();
        let mut flow = 0;
        while flow < limit && self.build_levels(s, t) {
            self.next.iter_mut().for_each(|i| *i = 0);
            while flow < limit {
                let got = self.push(s, t, (limit - flow).min(BIG as usize) as u32);
                if got == 0 {
                    break;
                }
                flow += got as usize;
            }
        }
        flow
    }

    fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let v = self.to[a];
                if self.cap[a] > 0 && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

fn require_pair(g: &Graph) -> Result<(), ConnectivityError> {
    if g.n() < 2 {
        return Err(ConnectivityError::TooSmall(g.n()));
    }
    Ok(())
}

/// Minimum over `t` of the max-flow between vertex 1 and `t`.
pub fn edge_connectivity(g: &Graph) -> Result<Cut<(usize, usize)>, ConnectivityError> {
    require_pair(g)?;
    if !g.is_connected() {
        return Ok(Cut { value: 0, witness: Vec::new() });
    }
    let n = g.n();
    let mut net = FlowNetwork::new(n);
    for &(u, v) in g.edges() {
        net.add_arc(u - 1, v - 1, 1, 1);
    }
    // isolating a minimum-degree vertex is always a valid cut
    let x = (1..=n).min_by_key(|&v| g.degree(v)).unwrap();
    let mut best = Cut {
        value: g.degree(x),
        witness: g.neighbors(x).iter().map(|&w| (x.min(w), x.max(w))).collect(),
    };
    for t in 1..n {
        if best.value == 0 {
            break;
        }
        let flow = net.max_flow(0, t, best.value);
        if flow < best.value {
            let side = net.residual_reachable(0);
            let witness = g.edges().iter().copied().filter(|&(u, v)| side[u - 1] != side[v - 1]).collect();
            best = Cut { value: flow, witness };
        }
    }
    best.witness.sort_unstable();
    assert!(
        best.witness.len() == best.value && !g.remove_edges(&best.witness).is_connected(),
        "edge cut witness failed re-validation"
    );
    Ok(best)
}

/// Vertex connectivity through the split-vertex flow reduction, evaluated on
/// a minimum-degree vertex against its non-neighbours and on pairs of its
/// non-adjacent neighbours.
pub fn vertex_connectivity(g: &Graph) -> Result<Cut<usize>, ConnectivityError> {
    require_pair(g)?;
    let n = g.n();
    if !g.is_connected() {
        return Ok(Cut { value: 0, witness: Vec::new() });
    }
    if g.is_complete() {
        return Ok(Cut { value: n - 1, witness: Vec::new() });
    }
    let mut net = FlowNetwork::new(2 * n);
    for v in 0..n {
        net.add_arc(2 * v, 2 * v + 1, 1, 0);
    }
    for &(u, v) in g.edges() {
        let (u, v) = (u - 1, v - 1);
        net.add_arc(2 * u + 1, 2 * v, BIG, 0);
        net.add_arc(2 * v + 1, 2 * u, BIG, 0);
    }

    let x = (1..=n).min_by_key(|&v| g.degree(v)).unwrap();
    let mut pairs: Vec<(usize, usize)> = (1..=n).filter(|&w| w != x && !g.has_edge(x, w)).map(|w| (x, w)).collect();
    let nbrs = g.neighbors(x);
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if !g.has_edge(a, b) {
                pairs.push((a, b));
            }
        }
    }

    let mut best = match pairs.first() {
        Some(&(s, _)) if s == x => Cut { value: g.degree(x), witness: nbrs.to_vec() },
        Some(&(s, t)) => Cut { value: n - 2, witness: (1..=n).filter(|&v| v != s && v != t).collect() },
        None => unreachable!("non-complete graph has a non-adjacent pair near a minimum-degree vertex"),
    };
    for (s, t) in pairs {
        if best.value == 0 {
            break;
        }
        let flow = net.max_flow(2 * (s - 1) + 1, 2 * (t - 1), best.value);
        if flow < best.value {
            let seen = net.residual_reachable(2 * (s - 1) + 1);
            let witness = (0..n).filter(|&v| seen[2 * v] && !seen[2 * v + 1]).map(|v| v + 1).collect();
            best = Cut { value: flow, witness };
        }
    }
    best.witness.sort_unstable();
    assert!(
        best.witness.len() == best.value && !g.remove_vertices(&best.witness).expect("cut is proper").is_connected(),
        "vertex cut witness failed re-validation"
    );
    Ok(best)
}

pub fn connectivity_report(g: &Graph) -> Result<ConnectivityReport, ConnectivityError> {
    let v = vertex_connectivity(g)?;
    let e = edge_connectivity(g)?;
    let report = ConnectivityReport {
        vertex_connectivity: v.value,
        edge_connectivity: e.value,
        min_degree: g.min_degree(),
        vertex_cut: v.witness,
        edge_cut: e.witness,
    };
    debug_assert!(report.vertex_connectivity <= report.edge_connectivity);
    debug_assert!(report.edge_connectivity <= report.min_degree);
    Ok(report)
}

/// Exhaustive oracle for `n <= 12`: smallest disconnecting vertex subset,
/// and the smallest edge boundary over all vertex bipartitions.
pub fn brute_force_connectivity(g: &Graph) -> Result<ConnectivityReport, ConnectivityError> {
    require_pair(g)?;
    let n = g.n();
    if n > 12 {
        return Err(ConnectivityError::BudgetExceeded(n));
    }
    let bits = BitGraph::new(g);
    let full = (1u64 << n) - 1;

    let mut vertex = (n - 1, Vec::new());
    'sizes: for size in 0..=n - 2 {
        for removed in subsets_of_size(n, size) {
            if !bits.connected_within(full & !removed) {
                vertex = (size, mask_vertices(removed));
                break 'sizes;
            }
        }
    }

    let mut edge = (usize::MAX, Vec::new());
    // S always contains vertex 1 and never the whole vertex set
    for rest in 0..(1u64 << (n - 1)) - 1 {
        let side = 1 | (rest << 1);
        let crossing: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| (side >> (u - 1) & 1) != (side >> (v - 1) & 1))
            .collect();
        if crossing.len() < edge.0 {
            edge = (crossing.len(), crossing);
        }
    }

    Ok(ConnectivityReport {
        vertex_connectivity: vertex.0,
        edge_connectivity: edge.0,
        min_degree: g.min_degree(),
        vertex_cut: vertex.1,
        edge_cut: edge.1,
    })
}

/// Adjacency bitmasks for graphs with at most 64 vertices.
pub(crate) struct BitGraph {
    adj: Vec<u64>,
}

impl BitGraph {
    pub(crate) fn new(g: &Graph) -> Self {
        assert!(g.n() <= 64, "bit graph limited to 64 vertices");
        let mut adj = vec![0u64; g.n()];
        for &(u, v) in g.edges() {
            adj[u - 1] |= 1 << (v - 1);
            adj[v - 1] |= 1 << (u - 1);
        }
        BitGraph { adj }
    }

    /// Whether the subgraph induced by `alive` is connected (empty counts as connected).
    pub(crate) fn connected_within(&self, alive: u64) -> bool {
        if alive == 0 {
            return true;
        }
        let mut reached = alive & alive.wrapping_neg();
        let mut frontier = reached;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            next &= alive & !reached;
            reached |= next;
            frontier = next;
        }
        reached == alive
    }
}

fn mask_vertices(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

/// All `size`-element subsets of `0..n` as bitmasks, in increasing numeric order.
pub(crate) fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = u64> {
    assert!(n <= 63, "subset enumeration limited to 63 elements");
    let limit = 1u64 << n;
    let first = if size == 0 { 0 } else { (1u64 << size) - 1 };
    let mut next = Some(first).filter(|&f| size <= n && f < limit);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let succ = (((r ^ cur) >> 2) / c) | r;
            (succ < limit).then_some(succ)
        };
        Some(cur)
    })
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Outcome of the exhaustive `(k-1)`-vertex removal layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RemovalCheck {
    Checked { subsets: u64, all_connected: bool },
    Skipped { subsets: u128 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResilienceCertificate {
    pub plan: ConstructionPlan,
    pub expected: usize,
    pub report: ConnectivityReport,
    pub removal: RemovalCheck,
    pub pass: bool,
}

/// Default cap on the number of vertex subsets the removal layer enumerates.
pub const REMOVAL_BUDGET: u128 = 1_000_000;

/// Checks that every set of `size` vertices can be deleted without
/// disconnecting `g`, if `C(n, size) <= budget`.
pub fn removal_resilience(g: &Graph, size: usize, budget: u128) -> RemovalCheck {
    let n = g.n();
    let total = binomial(n as u64, size as u64);
    if total > budget || n > 63 {
        return RemovalCheck::Skipped { subsets: total };
    }
    let bits = BitGraph::new(g);
    let full = (1u64 << n) - 1;
    let mut count = 0u64;
    let mut all_connected = true;
    for removed in subsets_of_size(n, size) {
        count += 1;
        if !bits.connected_within(full & !removed) {
            all_connected = false;
            break;
        }
    }
    RemovalCheck::Checked { subsets: count, all_connected }
}

/// Builds the constructed graph for `(n, m)` and checks that its vertex and
/// edge connectivity both equal `⌊2m/n⌋`, plus the removal layer.
pub fn certify_theorem4(n: usize, m: usize) -> Result<ResilienceCertificate, ConnectivityError> {
    certify_theorem4_with_budget(n, m, REMOVAL_BUDGET)
}

pub fn certify_theorem4_with_budget(
    n: usize,
    m: usize,
    budget: u128,
) -> Result<ResilienceCertificate, ConnectivityError> {
    let plan = select_case(n, m)?;
    let g = construct_plan(&plan);
    let report = connectivity_report(&g)?;
    let expected = plan.k;
    let removal = removal_resilience(&g, expected - 1, budget);
    let pass = report.vertex_connectivity == expected
        && report.edge_connectivity == expected
        && !matches!(removal, RemovalCheck::Checked { all_connected: false, .. });
    Ok(ResilienceCertificate { plan, expected, report, removal, pass })
}
