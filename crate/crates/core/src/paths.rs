//! Exact shortest-path multiplicities.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::apsp::DistanceOracle;
use crate::graph::WeightedGraph;

/// Number of distinct shortest paths from every vertex to a fixed target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCounts {
    target: usize,
    counts: Vec<BigUint>,
}

impl PathCounts {
    pub fn target(&self) -> usize {
        self.target
    }

    /// `#sp(v, target)`; zero when `v` cannot reach the target.
    pub fn count(&self, v: usize) -> &BigUint {
        &self.counts[v]
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }
}

/// Counts shortest paths into `target` with one pass over the vertices in
/// increasing distance from it.
///
/// A neighbor `u` of `v` continues a shortest `v`–`target` path exactly when
/// `w(v,u) + d(u,target) = d(v,target)`; positive weights make `u` strictly
/// closer, so its count is final by the time `v` is processed.
pub fn count_shortest_paths(g: &WeightedGraph, oracle: &DistanceOracle, target: usize) -> PathCounts {
    let n = g.vertex_count();
    let mut order: Vec<(usize, &BigInt)> = (0..n)
        .filter_map(|v| oracle.scaled(v, target).map(|d| (v, d)))
        .collect();
    order.sort_by(|a, b| a.1.cmp(b.1).then(a.0.cmp(&b.0)));

    let mut counts = vec![BigUint::zero(); n];
    counts[target] = BigUint::one();
    for &(v, dv) in order.iter().filter(|(v, _)| *v != target) {
        let mut total = BigUint::zero();
        for u in g.neighbors(v) {
            let Some(du) = oracle.scaled(u, target) else { continue };
            let w = oracle.scale_weight(g.weight_between(v, u).unwrap());
            if &(w + du) == dv {
                total += &counts[u];
            }
        }
        counts[v] = total;
    }
    PathCounts { target, counts }
}

/// Shortest-path counts for every target, indexable as `#sp(a, b)`.
#[derive(Debug, Clone)]
pub struct PathCountTable {
    by_target: Vec<PathCounts>,
}

impl PathCountTable {
    pub fn build(g: &WeightedGraph, oracle: &DistanceOracle) -> Self {
        PathCountTable {
            by_target: (0..g.vertex_count())
                .map(|t| count_shortest_paths(g, oracle, t))
                .collect(),
        }
    }

    pub fn get(&self, a: usize, b: usize) -> &BigUint {
        self.by_target[b].count(a)
    }

    pub fn for_target(&self, t: usize) -> &PathCounts {
        &self.by_target[t]
    }
}
