//! Seeded random graph generators for tests, benchmarks and the CLI.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Digraph, Edge};

const WEIGHT_RANGE: std::ops::Range<f64> = 0.1..1.0;

/// Connected digraph with `n` nodes and exactly `m` directed edges.
///
/// A random spanning tree with random edge directions guarantees
/// connectivity; the remaining edges are drawn uniformly from the unused
/// ordered pairs. Weights are uniform in `[0.1, 1)`.
pub fn random_connected_digraph(n: usize, m: usize, seed: u64) -> Result<Digraph> {
    let max_edges = n * n.saturating_sub(1);
    if n == 0 || m + 1 < n || m > max_edges {
        return Err(Error::InvalidParams(format!(
            "cannot build a connected digraph with {n} nodes and {m} edges"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used = vec![false; n * n];
    let mut edges = Vec::with_capacity(m);

    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    for i in 1..n {
        let a = perm[i];
        let b = perm[rng.random_range(0..i)];
        let (src, dst) = if rng.random_bool(0.5) { (a, b) } else { (b, a) };
        used[src * n + dst] = true;
        edges.push(Edge::new(src, dst, rng.random_range(WEIGHT_RANGE)));
    }

    let mut rest: Vec<(usize, usize)> = (0..n)
        .flat_map(|s| (0..n).map(move |d| (s, d)))
        .filter(|&(s, d)| s != d && !used[s * n + d])
        .collect();
    rest.shuffle(&mut rng);
    for &(src, dst) in rest.iter().take(m - edges.len()) {
        edges.push(Edge::new(src, dst, rng.random_range(WEIGHT_RANGE)));
    }
    Ok(Digraph::new(n, edges)?)
}

/// Connected symmetric digraph: `m` undirected links, each stored as two
/// opposite edges of equal weight.
pub fn random_symmetric_digraph(n: usize, m: usize, seed: u64) -> Result<Digraph> {
    if n == 0 || m + 1 < n || m > n * n.saturating_sub(1) / 2 {
        return Err(Error::InvalidParams(format!(
            "cannot build a connected undirected graph with {n} nodes and {m} links"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used = vec![false; n * n];
    let mut links = Vec::with_capacity(m);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    for i in 1..n {
        let (a, b) = (perm[i], perm[rng.random_range(0..i)]);
        used[a.min(b) * n + a.max(b)] = true;
        links.push((a.min(b), a.max(b)));
    }
    let mut rest: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !used[a * n + b])
        .collect();
    rest.shuffle(&mut rng);
    links.extend(rest.into_iter().take(m + 1 - n));

    let mut edges = Vec::with_capacity(2 * m);
    for (a, b) in links {
        let w = rng.random_range(WEIGHT_RANGE);
        edges.push(Edge::new(a, b, w));
        edges.push(Edge::new(b, a, w));
    }
    Ok(Digraph::new(n, edges)?)
}
