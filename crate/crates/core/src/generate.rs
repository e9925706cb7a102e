//! Seeded instance generators.
//!
//! All randomness is integer sampling from a ChaCha stream, so a seed yields
//! the same instance on every platform.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::{Edge, SimpleGraph, WeightedGraph};
use crate::weight::Rational;
use crate::Result;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn int(w: u64) -> Rational {
    Rational::from_integer(w.into())
}

fn check_wmax(wmax: u64) -> Result<()> {
    if wmax == 0 {
        return Err(Error::InvalidParameter("maximum weight must be at least 1".into()));
    }
    Ok(())
}

/// `m` distinct edges chosen uniformly, integer weights in `1..=wmax`.
pub fn random(n: usize, m: usize, wmax: u64, seed: u64) -> Result<WeightedGraph> {
    check_wmax(wmax)?;
    let mut r = rng(seed);
    let edges = random_edges(n, m, &mut r)?;
    WeightedGraph::from_edges(
        n,
        edges
            .into_iter()
            .map(|e| (e.low(), e.high(), int(r.gen_range(1..=wmax))))
            .collect::<Vec<_>>(),
    )
}

fn random_edges(n: usize, m: usize, r: &mut ChaCha8Rng) -> Result<BTreeSet<Edge>> {
    let total = n * n.saturating_sub(1) / 2;
    if m > total {
        return Err(Error::InvalidParameter(format!(
            "{m} edges requested but {n} vertices allow at most {total}"
        )));
    }
    let mut all: Vec<Edge> = (0..n).tuple_combinations().map(|(u, v)| Edge::new(u, v)).collect();
    all.shuffle(r);
    Ok(all.into_iter().take(m).collect())
}

/// Unweighted counterpart of [`random`].
pub fn random_simple(n: usize, m: usize, seed: u64) -> Result<SimpleGraph> {
    let edges = random_edges(n, m, &mut rng(seed))?;
    SimpleGraph::new(n, edges.into_iter().map(Edge::endpoints))
}

/// A random tree: vertex `v > 0` hangs off a uniformly chosen earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> SimpleGraph {
    let mut r = rng(seed);
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (r.gen_range(0..v), v)).collect();
    SimpleGraph::new(n, edges).expect("tree edges are distinct")
}

/// A graph whose chordless cycles all have at most `sigma` edges.
///
/// Starts from a cycle and repeatedly glues a new cycle of random length
/// `3..=sigma` onto an existing edge, or hangs a pendant vertex when too few
/// vertices remain. Each new cycle may receive one random chord. Gluing
/// along an edge or a vertex never creates a longer chordless cycle, since
/// such a cycle cannot cross a separator that is a single edge or vertex.
pub fn chordal(n: usize, sigma: usize, wmax: u64, seed: u64) -> Result<WeightedGraph> {
    if sigma < 3 {
        return Err(Error::InvalidSigma(sigma));
    }
    check_wmax(wmax)?;
    let mut r = rng(seed);
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    let mut next = 0usize;
    while next < n {
        let remaining = n - next;
        if edges.is_empty() {
            if remaining < 3 {
                // Too small for a cycle: a path.
                edges.extend((1..n).map(|v| Edge::new(v - 1, v)));
                break;
            }
            let len = r.gen_range(3..=sigma.min(remaining));
            let ring: Vec<usize> = (0..len).collect();
            add_cycle(&mut edges, &ring, &mut r);
            next = len;
            continue;
        }
        let anchor = *edges.iter().nth(r.gen_range(0..edges.len())).unwrap();
        if remaining == 1 || r.gen_range(0..4) == 0 {
            let v = next;
            let u = if r.gen_ratio(1, 2) { anchor.low() } else { anchor.high() };
            edges.insert(Edge::new(u, v));
            next += 1;
            continue;
        }
        let len = r.gen_range(3..=sigma.min(remaining + 2));
        let mut ring = vec![anchor.low(), anchor.high()];
        ring.extend(next..next + len - 2);
        add_cycle(&mut edges, &ring, &mut r);
        next += len - 2;
    }
    WeightedGraph::from_edges(
        n,
        edges
            .into_iter()
            .map(|e| (e.low(), e.high(), int(r.gen_range(1..=wmax))))
            .collect::<Vec<_>>(),
    )
}

fn add_cycle(edges: &mut BTreeSet<Edge>, ring: &[usize], r: &mut ChaCha8Rng) {
    let k = ring.len();
    for i in 0..k {
        edges.insert(Edge::new(ring[i], ring[(i + 1) % k]));
    }
    if k >= 4 && r.gen_ratio(1, 2) {
        let a = r.gen_range(0..k);
        let offset = r.gen_range(2..k - 1);
        edges.insert(Edge::new(ring[a], ring[(a + offset) % k]));
    }
}

/// `K_n` with edge `(0, 1)` of weight `n+1` and every other edge of weight 1.
/// Changing that one edge suffices.
pub fn footnote_kn(n: usize) -> Result<WeightedGraph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "footnote family needs n >= 3, got {n}"
        )));
    }
    WeightedGraph::from_edges(
        n,
        (0..n)
            .tuple_combinations()
            .map(|(u, v)| (u, v, int(if (u, v) == (0, 1) { n as u64 + 1 } else { 1 })))
            .collect::<Vec<_>>(),
    )
}

/// `k` unit-weight diamonds in series. Hub `i` is vertex `3i`; the two middle
/// vertices of diamond `i` are `3i+1` and `3i+2`. There are `2^k` shortest
/// paths from vertex 0 to vertex `3k`.
pub fn ladder(k: usize) -> WeightedGraph {
    let mut edges = Vec::with_capacity(4 * k);
    for i in 0..k {
        let (a, b) = (3 * i, 3 * i + 3);
        for mid in [3 * i + 1, 3 * i + 2] {
            edges.push((a, mid, 1));
            edges.push((mid, b, 1));
        }
    }
    WeightedGraph::from_int_edges(3 * k + 1, &edges).expect("ladder edges are valid")
}

/// A layered graph for length-bounded cuts: `s = 0`, then `layers` layers of
/// `width` vertices, then `t` last. Each vertex is joined to one random vertex
/// of the next layer and, with probability 1/2, to a second one.
pub fn layered(layers: usize, width: usize, seed: u64) -> Result<SimpleGraph> {
    if layers == 0 || width == 0 {
        return Err(Error::InvalidParameter(
            "layered graphs need at least one layer and width".into(),
        ));
    }
    let mut r = rng(seed);
    let t = layers * width + 1;
    let layer = |l: usize| (1 + l * width)..(1 + (l + 1) * width);
    let mut edges = BTreeSet::new();
    for v in layer(0) {
        edges.insert(Edge::new(0, v));
    }
    for l in 0..layers - 1 {
        let next: Vec<usize> = layer(l + 1).collect();
        for v in layer(l) {
            edges.insert(Edge::new(v, *next.choose(&mut r).unwrap()));
            if r.gen_ratio(1, 2) {
                edges.insert(Edge::new(v, *next.choose(&mut r).unwrap()));
            }
        }
    }
    for v in layer(layers - 1) {
        edges.insert(Edge::new(v, t));
    }
    SimpleGraph::new(t + 1, edges.into_iter().map(Edge::endpoints))
}
