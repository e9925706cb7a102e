//! Independent brute-force oracles. Nothing here calls the solvers or the
//! shortest-path machinery of the library; everything is recomputed from the
//! raw edge weights by enumeration.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use metric_repair::{Edge, Rational, WeightedGraph};
use num_bigint::BigUint;
use num_traits::{One, Zero};

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub fn triangle() -> WeightedGraph {
    WeightedGraph::from_int_edges(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 3)]).unwrap()
}

/// Builds a graph from one optional weight per vertex pair, pairs in
/// lexicographic order.
pub fn graph_from_mask(n: usize, weights: &[Option<i64>]) -> WeightedGraph {
    let edges: Vec<(usize, usize, i64)> = (0..n)
        .tuple_combinations()
        .zip(weights)
        .filter_map(|((u, v), w)| w.map(|w| (u, v, w)))
        .collect();
    WeightedGraph::from_int_edges(n, &edges).unwrap()
}

pub fn path_weight(g: &WeightedGraph, path: &[usize]) -> Rational {
    path.windows(2)
        .map(|w| g.weight_between(w[0], w[1]).unwrap().clone())
        .fold(Rational::zero(), |a, b| a + b)
}

/// Every simple path from `u` to `v`, by depth-first search.
pub fn simple_paths(g: &WeightedGraph, u: usize, v: usize) -> Vec<Vec<usize>> {
    fn go(g: &WeightedGraph, v: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if last == v {
            out.push(path.clone());
            return;
        }
        for x in g.neighbors(last).collect::<Vec<_>>() {
            if !path.contains(&x) {
                path.push(x);
                go(g, v, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(g, v, &mut vec![u], &mut out);
    out
}

/// Shortest simple paths from `u` to `v` and their length.
pub fn shortest_paths(g: &WeightedGraph, u: usize, v: usize) -> Option<(Rational, Vec<Vec<usize>>)> {
    let paths = simple_paths(g, u, v);
    let best = paths.iter().map(|p| path_weight(g, p)).min()?;
    let chosen = paths.into_iter().filter(|p| path_weight(g, p) == best).collect();
    Some((best, chosen))
}

pub fn brute_dist(g: &WeightedGraph, u: usize, v: usize) -> Option<Rational> {
    shortest_paths(g, u, v).map(|(d, _)| d)
}

pub fn brute_sp_count(g: &WeightedGraph, u: usize, v: usize) -> BigUint {
    shortest_paths(g, u, v).map_or(BigUint::zero(), |(_, ps)| BigUint::from(ps.len()))
}

/// Metric check straight from the definition: no edge is longer than some
/// other path between its endpoints.
pub fn brute_is_metric(g: &WeightedGraph) -> bool {
    g.edges().all(|(e, w)| {
        let (u, v) = e.endpoints();
        brute_dist(g, u, v).is_none_or(|d| &d >= w)
    })
}

/// Textbook Floyd-Warshall straight from the edge weights; `None` for
/// unreachable pairs. Much faster than path enumeration on dense graphs.
pub fn fw_distances(g: &WeightedGraph) -> Vec<Vec<Option<Rational>>> {
    let n = g.vertex_count();
    let mut d: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = Some(Rational::zero());
    }
    for (e, w) in g.edges() {
        d[e.low()][e.high()] = Some(w.clone());
        d[e.high()][e.low()] = Some(w.clone());
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (&d[i][k], &d[k][j]) {
                    let via = a + b;
                    if d[i][j].as_ref().is_none_or(|cur| via < *cur) {
                        d[i][j] = Some(via);
                    }
                }
            }
        }
    }
    d
}

pub fn fw_is_metric(g: &WeightedGraph) -> bool {
    let d = fw_distances(g);
    g.edges().all(|(e, w)| d[e.low()][e.high()].as_ref() == Some(w))
}

/// Rotates and reflects a vertex cycle so the smallest vertex comes first,
/// followed by its smaller neighbor.
pub fn canonical(cycle: &[usize]) -> Vec<usize> {
    let k = cycle.len();
    let i = (0..k).min_by_key(|&i| cycle[i]).unwrap();
    let fwd: Vec<usize> = (0..k).map(|j| cycle[(i + j) % k]).collect();
    let bwd: Vec<usize> = (0..k).map(|j| cycle[(i + k - j) % k]).collect();
    fwd.min(bwd)
}

pub fn cycle_edges(cycle: &[usize]) -> Vec<Edge> {
    let k = cycle.len();
    (0..k).map(|i| Edge::new(cycle[i], cycle[(i + 1) % k])).collect()
}

/// Every simple cycle, found by trying every ordering of every vertex subset.
pub fn brute_cycles(g: &WeightedGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut out = BTreeSet::new();
    for k in 3..=n {
        for subset in (0..n).combinations(k) {
            let first = subset[0];
            for rest in subset[1..].iter().copied().permutations(k - 1) {
                let mut c = vec![first];
                c.extend(rest);
                if cycle_edges(&c).iter().all(|&e| g.has_edge(e)) {
                    out.insert(canonical(&c));
                }
            }
        }
    }
    out.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Broken {
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
    pub heavy: Edge,
    pub deficit: Rational,
}

impl Broken {
    pub fn lights(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied().filter(move |&e| e != self.heavy)
    }
}

pub fn brute_broken_cycles(g: &WeightedGraph) -> Vec<Broken> {
    brute_cycles(g)
        .into_iter()
        .filter_map(|c| {
            let edges = cycle_edges(&c);
            let total = edges
                .iter()
                .map(|&e| g.weight(e).unwrap().clone())
                .fold(Rational::zero(), |a, b| a + b);
            let heavy = *edges.iter().max_by_key(|&&e| g.weight(e).unwrap()).unwrap();
            let w = g.weight(heavy).unwrap();
            let deficit = w - (&total - w);
            (deficit > Rational::zero()).then_some(Broken {
                vertices: c,
                edges,
                heavy,
                deficit,
            })
        })
        .collect()
}

pub fn regular_cover(broken: &[Broken], s: &BTreeSet<Edge>) -> bool {
    broken.iter().all(|c| c.edges.iter().any(|e| s.contains(e)))
}

pub fn light_cover(broken: &[Broken], s: &BTreeSet<Edge>) -> bool {
    broken.iter().all(|c| c.lights().any(|e| s.contains(&e)))
}

/// Smallest regular or light cover of the broken cycles, by subset search.
pub fn min_cover(g: &WeightedGraph, light: bool) -> usize {
    let broken = brute_broken_cycles(g);
    let edges = g.edge_list();
    for k in 0..=edges.len() {
        for combo in edges.iter().copied().combinations(k) {
            let s: BTreeSet<Edge> = combo.into_iter().collect();
            let ok = if light {
                light_cover(&broken, &s)
            } else {
                regular_cover(&broken, &s)
            };
            if ok {
                return k;
            }
        }
    }
    unreachable!("the full edge set covers everything")
}

/// Smallest decrease-only repair: lower some edges to their original
/// distances and check the result is a metric with nothing else changed.
pub fn min_decrease(g: &WeightedGraph) -> usize {
    let edges = g.edge_list();
    let d = fw_distances(g);
    let dist: BTreeMap<Edge, Rational> = edges
        .iter()
        .map(|&e| (e, d[e.low()][e.high()].clone().unwrap()))
        .collect();
    for k in 0..=edges.len() {
        for combo in edges.iter().copied().combinations(k) {
            let mut h = g.clone();
            for e in &combo {
                h.set_weight(*e, dist[e].clone()).unwrap();
            }
            if fw_is_metric(&h) {
                return k;
            }
        }
    }
    unreachable!("lowering every edge to its distance gives a metric")
}

/// The maximum deficit and, per edge, the number of broken cycles of that
/// deficit with the edge as heavy edge and as light edge.
pub fn deficit_counts(g: &WeightedGraph) -> (Rational, BTreeMap<Edge, (BigUint, BigUint)>) {
    let broken = brute_broken_cycles(g);
    let delta = broken
        .iter()
        .map(|c| c.deficit.clone())
        .max()
        .unwrap_or_else(Rational::zero);
    let mut counts: BTreeMap<Edge, (BigUint, BigUint)> = g
        .edge_list()
        .into_iter()
        .map(|e| (e, (BigUint::zero(), BigUint::zero())))
        .collect();
    for c in broken.iter().filter(|c| c.deficit == delta) {
        counts.get_mut(&c.heavy).unwrap().0 += BigUint::one();
        for e in c.lights() {
            counts.get_mut(&e).unwrap().1 += BigUint::one();
        }
    }
    (delta, counts)
}

/// True when every closed walk counted by the light-edge formula is a simple
/// cycle: for each edge `f = (a,b)`, edge `e = (s,t)` and orientation with
/// `w(f) = d(a,s) + w(e) + d(t,b) + δ`, every shortest `a`–`s` path is vertex
/// disjoint from every shortest `t`–`b` path.
pub fn light_segments_disjoint(g: &WeightedGraph) -> bool {
    let (delta, _) = deficit_counts(g);
    if delta.is_zero() {
        return true;
    }
    for (f, wf) in g.edges() {
        for (e, we) in g.edges() {
            let (s, t) = e.endpoints();
            for (a, b) in [f.endpoints(), (f.high(), f.low())] {
                let (Some((d1, p1)), Some((d2, p2))) = (shortest_paths(g, a, s), shortest_paths(g, t, b)) else {
                    continue;
                };
                if *wf != &d1 + we + &d2 + &delta {
                    continue;
                }
                for x in &p1 {
                    for y in &p2 {
                        if x.iter().any(|v| y.contains(v)) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// Chordless cycles with at most `cap` vertices: vertex subsets whose induced
/// subgraph is connected and 2-regular.
pub fn brute_chordless(g: &WeightedGraph, cap: usize) -> BTreeSet<Vec<usize>> {
    let n = g.vertex_count();
    let mut out = BTreeSet::new();
    for k in 3..=cap.min(n) {
        for subset in (0..n).combinations(k) {
            let deg_ok = subset
                .iter()
                .all(|&u| subset.iter().filter(|&&v| g.is_adjacent(u, v)).count() == 2);
            if !deg_ok {
                continue;
            }
            // Walk around from the first vertex; connected iff we see all k.
            let mut order = vec![subset[0]];
            let mut prev = usize::MAX;
            let mut cur = subset[0];
            loop {
                let next = subset
                    .iter()
                    .copied()
                    .find(|&v| v != prev && v != cur && g.is_adjacent(cur, v))
                    .unwrap();
                if next == subset[0] {
                    break;
                }
                order.push(next);
                prev = cur;
                cur = next;
            }
            if order.len() == k {
                out.insert(canonical(&order));
            }
        }
    }
    out
}
