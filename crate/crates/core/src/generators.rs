//! Random graph generators.

use std::collections::HashSet;

use rand::seq::index;
use rand::Rng;

use crate::graph::Graph;

/// Decodes a linear index into the `k`-th pair `(i, j)`, `i < j`, in
/// colexicographic order: (0,1), (0,2), (1,2), (0,3), ...
fn pair_from_index(k: usize) -> (usize, usize) {
    // Largest j with j(j-1)/2 <= k.
    let mut j = ((1.0 + (1.0 + 8.0 * k as f64).sqrt()) / 2.0) as usize;
    while j * (j - 1) / 2 > k {
        j -= 1;
    }
    while (j + 1) * j / 2 <= k {
        j += 1;
    }
    (k - j * (j - 1) / 2, j)
}

/// Uniform random graph with exactly `m` distinct edges on `n` nodes.
///
/// # Panics
///
/// If `m > n(n-1)/2`.
pub fn gnm<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Graph {
    let max_edges = n * n.saturating_sub(1) / 2;
    assert!(m <= max_edges, "G(n={n}, m={m}) exceeds {max_edges} possible edges");
    let picks = index::sample(rng, max_edges, m);
    Graph::from_edges(n, picks.into_iter().map(pair_from_index))
}

/// Watts–Strogatz small-world graph: a ring where every node links to its
/// `k / 2` nearest neighbors on each side, then each lattice edge `(u, u+j)`
/// is rewired to a uniformly chosen new endpoint with probability `p`.
///
/// # Panics
///
/// If `k` is odd or `k >= n`.
pub fn watts_strogatz<R: Rng + ?Sized>(n: usize, k: usize, p: f64, rng: &mut R) -> Graph {
    assert!(k % 2 == 0 && k < n, "ring degree {k} must be even and below n = {n}");
    let mut adj: Vec<HashSet<usize>> = vec![HashSet::new(); n];
    for u in 0..n {
        for j in 1..=k / 2 {
            let v = (u + j) % n;
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    for j in 1..=k / 2 {
        for u in 0..n {
            if !rng.gen_bool(p) {
                continue;
            }
            let v = (u + j) % n;
            if adj[u].len() >= n - 1 || !adj[u].contains(&v) {
                continue;
            }
            let w = loop {
                let w = rng.gen_range(0..n);
                if w != u && !adj[u].contains(&w) {
                    break w;
                }
            };
            adj[u].remove(&v);
            adj[v].remove(&u);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    let edges: Vec<(usize, usize)> = adj
        .iter()
        .enumerate()
        .flat_map(|(u, set)| set.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
        .collect();
    Graph::from_edges(n, edges)
}

/// Barabási–Albert preferential-attachment graph. Starts from a star on
/// `links + 1` nodes; each new node attaches to `links` distinct existing
/// nodes chosen with probability proportional to degree.
///
/// # Panics
///
/// If `links == 0` or `links >= n`.
pub fn barabasi_albert<R: Rng + ?Sized>(n: usize, links: usize, rng: &mut R) -> Graph {
    assert!(links >= 1 && links < n, "need 1 <= links < n, got links = {links}, n = {n}");
    let mut edges: Vec<(usize, usize)> = (1..=links).map(|leaf| (0, leaf)).collect();
    // Every node appears once per incident edge end.
    let mut ends: Vec<usize> = Vec::with_capacity(2 * links * n);
    for &(a, b) in &edges {
        ends.push(a);
        ends.push(b);
    }
    let mut targets: Vec<usize> = Vec::with_capacity(links);
    for source in links + 1..n {
        targets.clear();
        while targets.len() < links {
            let t = ends[rng.gen_range(0..ends.len())];
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, source));
            ends.push(t);
            ends.push(source);
        }
    }
    Graph::from_edges(n, edges)
}
