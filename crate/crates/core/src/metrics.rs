//! Descriptive statistics of a network: density, clustering, distances,
//! components and degree distribution. Edge weights are ignored throughout.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::graph::Graph;

/// Per-network descriptive statistics. Fields are `None` where undefined
/// (e.g. `density` for fewer than two nodes, `d_mean` when the largest
/// component is a single node).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NetworkMetrics {
    pub n: usize,
    pub m: usize,
    pub density: Option<f64>,
    /// Average degree `2m / n`.
    pub z: Option<f64>,
    pub cc: Option<f64>,
    pub d_mean: Option<f64>,
    pub largest_component_fraction: Option<f64>,
}

impl NetworkMetrics {
    pub fn compute(graph: &Graph) -> Self {
        let n = graph.node_count();
        let m = graph.edge_count();
        let density = (n >= 2).then(|| 2.0 * m as f64 / (n as f64 * (n as f64 - 1.0)));
        let z = (n >= 1).then(|| 2.0 * m as f64 / n as f64);
        Self {
            n,
            m,
            density,
            z,
            cc: clustering_coefficient(graph),
            d_mean: mean_distance(graph),
            largest_component_fraction: (n >= 1).then(|| largest_component(graph).1),
        }
    }
}

/// Local clustering coefficient of `v`: closed neighbor pairs over
/// `deg·(deg−1)/2`, or 0 when `deg < 2`.
pub fn local_clustering(graph: &Graph, v: usize) -> f64 {
    let nbrs = graph.neighbors(v);
    let k = nbrs.len();
    if k < 2 {
        return 0.0;
    }
    let mut links = 0usize;
    for (i, &u) in nbrs.iter().enumerate() {
        // Sorted merge of N(u) against the neighbors of v after u.
        let rest = &nbrs[i + 1..];
        let nu = graph.neighbors(u);
        let (mut a, mut b) = (0, 0);
        while a < nu.len() && b < rest.len() {
            match nu[a].cmp(&rest[b]) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    links += 1;
                    a += 1;
                    b += 1;
                }
            }
        }
    }
    links as f64 / (k * (k - 1) / 2) as f64
}

/// Average local clustering over all nodes, degree-<2 nodes counted as 0.
/// `None` for the empty graph.
pub fn clustering_coefficient(graph: &Graph) -> Option<f64> {
    let n = graph.node_count();
    if n == 0 {
        return None;
    }
    let total: f64 = (0..n).map(|v| local_clustering(graph, v)).sum();
    Some(total / n as f64)
}

/// Connected components as sorted node lists, ordered by smallest member.
pub fn connected_components(graph: &Graph) -> Vec<Vec<usize>> {
    let n = graph.node_count();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut members = Vec::new();
        while let Some(v) = queue.pop_front() {
            members.push(v);
            for &u in graph.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    components
}

/// The largest connected component and its share of all nodes.
///
/// Ties go to the component containing the lowest node index; networks
/// index nodes in key order, so this is the lexicographically smallest key.
/// The empty graph yields `(vec![], 0.0)`.
pub fn largest_component(graph: &Graph) -> (Vec<usize>, f64) {
    let n = graph.node_count();
    let mut best: Vec<usize> = Vec::new();
    for component in connected_components(graph) {
        if component.len() > best.len() {
            best = component;
        }
    }
    let fraction = if n == 0 {
        0.0
    } else {
        best.len() as f64 / n as f64
    };
    (best, fraction)
}

/// Mean BFS hop distance over unordered node pairs of the largest component.
/// `None` when that component has fewer than two nodes.
pub fn mean_distance(graph: &Graph) -> Option<f64> {
    let (component, _) = largest_component(graph);
    let s = component.len();
    if s < 2 {
        return None;
    }
    let n = graph.node_count();
    let mut dist = vec![u32::MAX; n];
    let mut queue = Vec::with_capacity(s);
    let mut total: u64 = 0;
    for &source in &component {
        for &v in &component {
            dist[v] = u32::MAX;
        }
        dist[source] = 0;
        queue.clear();
        queue.push(source);
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            let next = dist[v] + 1;
            for &u in graph.neighbors(v) {
                if dist[u] == u32::MAX {
                    dist[u] = next;
                    queue.push(u);
                }
            }
        }
        total += component.iter().map(|&v| u64::from(dist[v])).sum::<u64>();
    }
    // Every unordered pair was counted from both ends.
    let pairs = (s * (s - 1)) as f64;
    Some(total as f64 / pairs)
}

/// Degree `k` → number of nodes with that degree, including `k = 0`.
pub fn degree_histogram(graph: &Graph) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for v in 0..graph.node_count() {
        *hist.entry(graph.degree(v)).or_insert(0) += 1;
    }
    hist
}
