//! Seeded random instance generation for experiments and test harnesses.

use rand::Rng;

use crate::error::Result;
use crate::hypergraph::{Hypergraph, Vertex, VertexSet};

/// Uniform random k-uniform hypergraph on 1..=n with exactly `m` distinct
/// edges (rejection-sampled, so `m` must not exceed C(n,k)).
pub fn random_hypergraph<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    m: usize,
    rng: &mut R,
) -> Result<Hypergraph> {
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        let edge = random_subset(n, k, rng);
        if seen.insert(edge.clone()) {
            edges.push(edge);
        }
    }
    Hypergraph::new(n, k, edges)
}

/// Uniform random k-subset of 1..=n (partial Fisher-Yates).
pub fn random_subset<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> VertexSet {
    let mut pool: Vec<Vertex> = (1..=n).collect();
    for i in 0..k {
        let j = rng.random_range(i..n);
        pool.swap(i, j);
    }
    pool.truncate(k);
    VertexSet::from_unsorted(pool).expect("distinct by construction")
}
