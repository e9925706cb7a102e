//! All-pairs shortest paths over exact weights.
//!
//! Distances are computed by Floyd-Warshall on integers: every weight is
//! multiplied by the least common multiple of the weight denominators, so the
//! inner loop never normalizes fractions. When the total weight fits in an
//! `i64` the relaxation runs on machine integers.

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::graph::{Edge, WeightedGraph};
use crate::weight::{format_rational, Rational};

/// A shortest-path length, or `Infinite` for unreachable pairs.
///
/// The derived ordering places every finite value below `Infinite`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(Rational),
    Infinite,
}

impl Distance {
    pub fn zero() -> Self {
        Distance::Finite(Rational::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Distance::Finite(r) => Some(r),
            Distance::Infinite => None,
        }
    }
}

impl Add for &Distance {
    type Output = Distance;

    fn add(self, rhs: &Distance) -> Distance {
        match (self, rhs) {
            (Distance::Finite(a), Distance::Finite(b)) => Distance::Finite(a + b),
            _ => Distance::Infinite,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(r) => f.write_str(&format_rational(r)),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// All-pairs distances plus a next-hop table for path reconstruction.
#[derive(Debug, Clone)]
pub struct DistanceOracle {
    n: usize,
    scale: BigInt,
    dist: Vec<Option<BigInt>>,
    next: Vec<Option<usize>>,
}

/// Exact all-pairs shortest paths of `g`.
///
/// Relaxation only replaces an entry on strict improvement, with intermediate
/// vertices taken in increasing index order, so the reconstructed path for
/// each pair is fully determined by the graph.
pub fn apsp(g: &WeightedGraph) -> DistanceOracle {
    let scale = common_denominator(g.edges().map(|(_, w)| w));
    let edges = g.edges().map(|(e, w)| (e, scale_by(w, &scale))).collect::<Vec<_>>();
    DistanceOracle::from_scaled_edges(g.vertex_count(), scale, &edges)
}

pub(crate) fn common_denominator<'a, I>(weights: I) -> BigInt
where
    I: IntoIterator<Item = &'a Rational>,
{
    weights.into_iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()))
}

/// `w * scale` as an integer; `scale` must be a multiple of `w`'s denominator.
pub(crate) fn scale_by(w: &Rational, scale: &BigInt) -> BigInt {
    let (q, r) = (w.numer() * scale).div_rem(w.denom());
    debug_assert!(r.is_zero(), "scale is not a multiple of the denominator");
    q
}

impl DistanceOracle {
    pub(crate) fn from_scaled_edges(n: usize, scale: BigInt, edges: &[(Edge, BigInt)]) -> Self {
        let total: Option<i64> = edges
            .iter()
            .try_fold(0i64, |acc, (_, w)| w.to_i64().and_then(|w| acc.checked_add(w)));
        let (dist, next) = match total {
            Some(t) if t <= i64::MAX / 4 => {
                let small = edges.iter().map(|(e, w)| (*e, w.to_i64().unwrap())).collect::<Vec<_>>();
                let (d, next) = floyd_warshall_small(n, &small);
                (d.into_iter().map(|x| x.map(BigInt::from)).collect(), next)
            }
            _ => floyd_warshall_big(n, edges),
        };
        DistanceOracle { n, scale, dist, next }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn dist(&self, u: usize, v: usize) -> Distance {
        match &self.dist[u * self.n + v] {
            Some(d) => Distance::Finite(Rational::new(d.clone(), self.scale.clone())),
            None => Distance::Infinite,
        }
    }

    pub fn is_reachable(&self, u: usize, v: usize) -> bool {
        self.dist[u * self.n + v].is_some()
    }

    /// Vertex sequence of the recorded shortest path from `u` to `v`.
    pub fn path(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        if !self.is_reachable(u, v) {
            return None;
        }
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            cur = self.next[cur * self.n + v].expect("reachable pair has a next hop");
            path.push(cur);
        }
        Some(path)
    }

    /// Edges of the recorded shortest path, in walking order.
    pub fn path_edges(&self, u: usize, v: usize) -> Vec<Edge> {
        self.path(u, v)
            .map(|p| p.windows(2).map(|w| Edge::new(w[0], w[1])).collect())
            .unwrap_or_default()
    }

    pub(crate) fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub(crate) fn scaled(&self, u: usize, v: usize) -> Option<&BigInt> {
        self.dist[u * self.n + v].as_ref()
    }

    pub(crate) fn scale_weight(&self, w: &Rational) -> BigInt {
        scale_by(w, &self.scale)
    }
}

fn floyd_warshall_small(n: usize, edges: &[(Edge, i64)]) -> (Vec<Option<i64>>, Vec<Option<usize>>) {
    let mut dist: Vec<Option<i64>> = vec![None; n * n];
    let mut next = vec![None; n * n];
    for v in 0..n {
        dist[v * n + v] = Some(0);
        next[v * n + v] = Some(v);
    }
    for &(e, w) in edges {
        let (a, b) = e.endpoints();
        dist[a * n + b] = Some(w);
        dist[b * n + a] = Some(w);
        next[a * n + b] = Some(b);
        next[b * n + a] = Some(a);
    }
    for k in 0..n {
        for i in 0..n {
            if i == k {
                continue;
            }
            let Some(dik) = dist[i * n + k] else { continue };
            for j in 0..n {
                let Some(dkj) = dist[k * n + j] else { continue };
                let cand = dik + dkj;
                let ij = i * n + j;
                if dist[ij].is_none_or(|cur| cand < cur) {
                    dist[ij] = Some(cand);
                    next[ij] = next[i * n + k];
                }
            }
        }
    }
    (dist, next)
}

fn floyd_warshall_big(n: usize, edges: &[(Edge, BigInt)]) -> (Vec<Option<BigInt>>, Vec<Option<usize>>) {
    let mut dist: Vec<Option<BigInt>> = vec![None; n * n];
    let mut next = vec![None; n * n];
    for v in 0..n {
        dist[v * n + v] = Some(BigInt::zero());
        next[v * n + v] = Some(v);
    }
    for (e, w) in edges {
        let (a, b) = e.endpoints();
        dist[a * n + b] = Some(w.clone());
        dist[b * n + a] = Some(w.clone());
        next[a * n + b] = Some(b);
        next[b * n + a] = Some(a);
    }
    for k in 0..n {
        let row_k: Vec<Option<BigInt>> = dist[k * n..(k + 1) * n].to_vec();
        for i in 0..n {
            if i == k {
                continue;
            }
            let Some(dik) = dist[i * n + k].clone() else { continue };
            for (j, dkj) in row_k.iter().enumerate() {
                let Some(dkj) = dkj else { continue };
                let cand = &dik + dkj;
                let ij = i * n + j;
                if dist[ij].as_ref().is_none_or(|cur| cand < *cur) {
                    dist[ij] = Some(cand);
                    next[ij] = next[i * n + k];
                }
            }
        }
    }
    (dist, next)
}
