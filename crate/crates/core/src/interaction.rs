//! Weighted qubit-interaction graphs and the metrics computed on them.
//!
//! Nodes are the circuit's virtual qubits (idle ones included); the weight of
//! an unordered pair is the number of two-qubit gates acting on it. All
//! distance metrics use hop counts, and disconnected graphs are handled by
//! averaging over reachable pairs only.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::{self, Write as _};

use crate::circuit::{circuit_depth, two_qubit_fraction, Circuit};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteractionGraph {
    n_nodes: usize,
    // keyed by (low, high)
    weights: BTreeMap<(usize, usize), u64>,
}

impl InteractionGraph {
    pub fn new(n_nodes: usize) -> Self {
        InteractionGraph {
            n_nodes,
            weights: BTreeMap::new(),
        }
    }

    /// Adds `w` to the weight of `{u, v}`. Self-loops are ignored.
    pub fn add_weight(&mut self, u: usize, v: usize, w: u64) {
        assert!(u < self.n_nodes && v < self.n_nodes, "node out of range");
        if u == v || w == 0 {
            return;
        }
        *self.weights.entry((u.min(v), u.max(v))).or_insert(0) += w;
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn n_edges(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, u: usize, v: usize) -> u64 {
        self.weights
            .get(&(u.min(v), u.max(v)))
            .copied()
            .unwrap_or(0)
    }

    /// Edges as `(u, v, weight)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.weights.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.values().sum()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges().filter(|&(a, b, _)| a == v || b == v).count()
    }

    pub fn weighted_degrees(&self) -> Vec<u64> {
        let mut deg = vec![0; self.n_nodes];
        for (u, v, w) in self.edges() {
            deg[u] += w;
            deg[v] += w;
        }
        deg
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n_nodes];
        for (u, v, _) in self.edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// `nodes N` header followed by one `u v weight` line per edge, ascending.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("nodes {}\n", self.n_nodes);
        for (u, v, w) in self.edges() {
            let _ = writeln!(out, "{u} {v} {w}");
        }
        out
    }

    /// Per-source BFS hop distances; `None` marks unreachable nodes.
    fn hop_distances(&self) -> Vec<Vec<Option<usize>>> {
        let adj = self.neighbors();
        (0..self.n_nodes).map(|s| bfs(&adj, s)).collect()
    }
}

pub(crate) fn bfs(adj: &[Vec<usize>], source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap_or(0);
        for &v in &adj[u] {
            if dist[v].is_none() {
                dist[v] = Some(d + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn build_interaction_graph(c: &Circuit) -> InteractionGraph {
    let mut g = InteractionGraph::new(c.n_qubits());
    for gate in c.gates().iter().filter(|g| g.is_two_qubit()) {
        let q = gate.qubits();
        g.add_weight(q[0], q[1], 1);
    }
    g
}

/// `(min, max, mean)` unweighted degree over all nodes.
pub fn degree_stats(g: &InteractionGraph) -> (usize, usize, f64) {
    if g.n_nodes == 0 {
        return (0, 0, 0.0);
    }
    let mut deg = vec![0usize; g.n_nodes];
    for (u, v, _) in g.edges() {
        deg[u] += 1;
        deg[v] += 1;
    }
    let min = *deg.iter().min().unwrap_or(&0);
    let max = *deg.iter().max().unwrap_or(&0);
    let avg = deg.iter().sum::<usize>() as f64 / g.n_nodes as f64;
    (min, max, avg)
}

/// Mean hop distance over mutually reachable unordered pairs, 0 if there are none.
pub fn average_shortest_path_hop(g: &InteractionGraph) -> f64 {
    let dist = g.hop_distances();
    let mut total = 0usize;
    let mut pairs = 0usize;
    for (u, row) in dist.iter().enumerate() {
        for d in row[u + 1..].iter().flatten() {
            total += d;
            pairs += 1;
        }
    }
    if pairs == 0 {
        0.0
    } else {
        total as f64 / pairs as f64
    }
}

/// Mean over nodes of `reachable / sum of distances`; isolated nodes contribute 0.
pub fn avg_closeness(g: &InteractionGraph) -> f64 {
    if g.n_nodes < 2 {
        return 0.0;
    }
    let dist = g.hop_distances();
    let sum: f64 = dist
        .iter()
        .map(|row| {
            let (reach, total) = row
                .iter()
                .flatten()
                .filter(|&&d| d > 0)
                .fold((0usize, 0usize), |(r, t), &d| (r + 1, t + d));
            if total == 0 {
                0.0
            } else {
                reach as f64 / total as f64
            }
        })
        .sum();
    sum / g.n_nodes as f64
}

/// Transitivity: `3 * triangles / connected triples`, 0 without triples.
pub fn global_clustering(g: &InteractionGraph) -> f64 {
    let n = g.n_nodes;
    let adj = g.neighbors();
    let mut matrix = vec![false; n * n];
    for (u, v, _) in g.edges() {
        matrix[u * n + v] = true;
        matrix[v * n + u] = true;
    }
    let mut triangles = 0usize;
    for (u, nbrs) in adj.iter().enumerate() {
        for (i, &v) in nbrs.iter().enumerate().filter(|&(_, &v)| v > u) {
            for &w in &nbrs[i + 1..] {
                if matrix[v * n + w] {
                    triangles += 1;
                }
            }
        }
    }
    let triples: usize = adj.iter().map(|a| a.len() * a.len().saturating_sub(1) / 2).sum();
    if triples == 0 {
        0.0
    } else {
        (3 * triangles) as f64 / triples as f64
    }
}

/// Population standard deviation of all `n(n-1)/2` upper-triangular weights, zeros included.
pub fn adjacency_std_dev(g: &InteractionGraph) -> Result<f64> {
    let n = g.n_nodes;
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "adjacency standard deviation needs at least 2 nodes, got {n}"
        )));
    }
    let entries = (n * (n - 1) / 2) as f64;
    let mean = g.total_weight() as f64 / entries;
    let zeros = entries - g.n_edges() as f64;
    let sq: f64 = g.edges().map(|(_, _, w)| (w as f64 - mean).powi(2)).sum::<f64>() + zeros * mean * mean;
    Ok((sq / entries).sqrt())
}

/// Population standard deviation over positive edge weights; 0 with fewer than 2 edges.
pub fn edge_weight_std_dev(g: &InteractionGraph) -> f64 {
    let m = g.n_edges();
    if m < 2 {
        return 0.0;
    }
    let mean = g.total_weight() as f64 / m as f64;
    let var = g.edges().map(|(_, _, w)| (w as f64 - mean).powi(2)).sum::<f64>() / m as f64;
    var.sqrt()
}

pub fn density(g: &InteractionGraph) -> f64 {
    let n = g.n_nodes;
    if n < 2 {
        return 0.0;
    }
    g.n_edges() as f64 / (n * (n - 1) / 2) as f64
}

/// Size of the largest connected component divided by the node count.
pub fn largest_component_fraction(g: &InteractionGraph) -> f64 {
    if g.n_nodes == 0 {
        return 0.0;
    }
    let adj = g.neighbors();
    let mut seen = vec![false; g.n_nodes];
    let mut largest = 0;
    for s in 0..g.n_nodes {
        if seen[s] {
            continue;
        }
        let dist = bfs(&adj, s);
        let mut size = 0;
        for (v, d) in dist.iter().enumerate() {
            if d.is_some() {
                seen[v] = true;
                size += 1;
            }
        }
        largest = largest.max(size);
    }
    largest as f64 / g.n_nodes as f64
}

/// Entries of a [`MetricVector`], in canonical column order.
///
/// The four metrics that survive redundancy reduction on typical corpora come
/// first so the greedy reduction prefers them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    AvgShortestPathHop,
    MaxDegree,
    MinDegree,
    AdjacencyStdDev,
    AvgCloseness,
    NNodes,
    NEdges,
    Density,
    AvgDegree,
    GlobalClustering,
    EdgeWeightStdDev,
    LargestComponentFraction,
    NGates,
    TwoQFraction,
    Depth,
}

impl Metric {
    pub const ALL: [Metric; 15] = [
        Metric::AvgShortestPathHop,
        Metric::MaxDegree,
        Metric::MinDegree,
        Metric::AdjacencyStdDev,
        Metric::AvgCloseness,
        Metric::NNodes,
        Metric::NEdges,
        Metric::Density,
        Metric::AvgDegree,
        Metric::GlobalClustering,
        Metric::EdgeWeightStdDev,
        Metric::LargestComponentFraction,
        Metric::NGates,
        Metric::TwoQFraction,
        Metric::Depth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::AvgShortestPathHop => "avg_shortest_path_hop",
            Metric::MaxDegree => "max_degree",
            Metric::MinDegree => "min_degree",
            Metric::AdjacencyStdDev => "adjacency_std_dev",
            Metric::AvgCloseness => "avg_closeness",
            Metric::NNodes => "n_nodes",
            Metric::NEdges => "n_edges",
            Metric::Density => "density",
            Metric::AvgDegree => "avg_degree",
            Metric::GlobalClustering => "global_clustering",
            Metric::EdgeWeightStdDev => "edge_weight_std_dev",
            Metric::LargestComponentFraction => "largest_component_fraction",
            Metric::NGates => "n_gates",
            Metric::TwoQFraction => "two_q_fraction",
            Metric::Depth => "depth",
        }
    }

    pub fn from_name(name: &str) -> Option<Metric> {
        Metric::ALL.into_iter().find(|m| m.name() == name)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Metric values in canonical order; `None` is a missing value (serialized as `NA`).
#[derive(Debug, Clone, PartialEq)]
pub struct MetricVector {
    values: [Option<f64>; Metric::ALL.len()],
}

impl MetricVector {
    pub fn get(&self, m: Metric) -> Option<f64> {
        self.values[m as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Metric, Option<f64>)> + '_ {
        Metric::ALL.iter().map(|&m| (m, self.values[m as usize]))
    }

    fn set(&mut self, m: Metric, v: f64) {
        self.values[m as usize] = Some(v);
    }
}

pub fn metric_vector(c: &Circuit) -> MetricVector {
    metric_vector_of(c, &build_interaction_graph(c))
}

/// Like [`metric_vector`] but reuses an already built graph.
pub fn metric_vector_of(c: &Circuit, g: &InteractionGraph) -> MetricVector {
    let mut mv = MetricVector {
        values: [None; Metric::ALL.len()],
    };
    let (min_deg, max_deg, avg_deg) = degree_stats(g);
    mv.set(Metric::AvgShortestPathHop, average_shortest_path_hop(g));
    mv.set(Metric::MaxDegree, max_deg as f64);
    mv.set(Metric::MinDegree, min_deg as f64);
    if let Ok(sd) = adjacency_std_dev(g) {
        mv.set(Metric::AdjacencyStdDev, sd);
    }
    mv.set(Metric::AvgCloseness, avg_closeness(g));
    mv.set(Metric::NNodes, g.n_nodes() as f64);
    mv.set(Metric::NEdges, g.n_edges() as f64);
    mv.set(Metric::Density, density(g));
    mv.set(Metric::AvgDegree, avg_deg);
    mv.set(Metric::GlobalClustering, global_clustering(g));
    mv.set(Metric::EdgeWeightStdDev, edge_weight_std_dev(g));
    mv.set(Metric::LargestComponentFraction, largest_component_fraction(g));
    mv.set(Metric::NGates, c.gate_count() as f64);
    mv.set(Metric::TwoQFraction, two_qubit_fraction(c));
    mv.set(Metric::Depth, circuit_depth(c) as f64);
    mv
}
