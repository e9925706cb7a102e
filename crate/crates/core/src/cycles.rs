//! Broken-cycle detection, cycle enumeration and deficit statistics.

use std::collections::{BTreeSet, HashSet};

use num_traits::Zero;

use crate::apsp::{apsp, DistanceOracle};
use crate::error::Error;
use crate::graph::{Edge, WeightedGraph};
use crate::weight::Rational;
use crate::Result;

/// A simple cycle as a vertex sequence in canonical form: the smallest
/// vertex first, and the smaller of its two cycle neighbors second.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    /// Canonicalizes any rotation or reflection of a cycle's vertex sequence.
    pub fn new(vertices: &[usize]) -> Self {
        assert!(vertices.len() >= 3, "a cycle needs at least three vertices");
        let k = vertices.len();
        let start = (0..k).min_by_key(|&i| vertices[i]).unwrap();
        let forward = vertices[(start + 1) % k];
        let backward = vertices[(start + k - 1) % k];
        let seq = if forward < backward {
            (0..k).map(|i| vertices[(start + i) % k]).collect()
        } else {
            (0..k).map(|i| vertices[(start + k - i) % k]).collect()
        };
        Cycle { vertices: seq }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of edges (equal to the number of vertices).
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges in cyclic order, starting with the edge out of the first vertex.
    pub fn edges(&self) -> Vec<Edge> {
        let k = self.vertices.len();
        (0..k)
            .map(|i| Edge::new(self.vertices[i], self.vertices[(i + 1) % k]))
            .collect()
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges().into_iter().collect()
    }

    /// True when no two non-consecutive cycle vertices are adjacent in `g`.
    pub fn is_chordless(&self, g: &WeightedGraph) -> bool {
        let k = self.vertices.len();
        for i in 0..k {
            for j in i + 2..k {
                if i == 0 && j == k - 1 {
                    continue;
                }
                if g.is_adjacent(self.vertices[i], self.vertices[j]) {
                    return false;
                }
            }
        }
        true
    }
}

/// A cycle whose heavy edge outweighs the rest of the cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrokenCycle {
    cycle: Cycle,
    edges: Vec<Edge>,
    heavy: usize,
    deficit: Rational,
}

impl BrokenCycle {
    /// Classifies `cycle` under the weights of `g`; `None` if it is not broken.
    pub fn from_cycle(g: &WeightedGraph, cycle: Cycle) -> Option<Self> {
        let edges = cycle.edges();
        let weights: Vec<&Rational> = edges
            .iter()
            .map(|e| g.weight(*e).expect("cycle edge in graph"))
            .collect();
        let heavy = (0..edges.len())
            .max_by(|&a, &b| weights[a].cmp(weights[b]).then(b.cmp(&a)))
            .unwrap();
        let rest: Rational = weights
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != heavy)
            .map(|(_, w)| (*w).clone())
            .sum();
        let deficit = weights[heavy] - rest;
        (deficit > Rational::zero()).then_some(BrokenCycle {
            cycle,
            edges,
            heavy,
            deficit,
        })
    }

    pub fn cycle(&self) -> &Cycle {
        &self.cycle
    }

    /// Edges in cyclic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn heavy_index(&self) -> usize {
        self.heavy
    }

    pub fn heavy_edge(&self) -> Edge {
        self.edges[self.heavy]
    }

    pub fn light_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(i, _)| *i != self.heavy)
            .map(|(_, e)| *e)
    }

    pub fn deficit(&self) -> &Rational {
        &self.deficit
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }
}

/// Exhaustive diagnostics; only meaningful for graphs small enough to
/// enumerate every simple cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceStats {
    /// δ(G): the largest cycle deficit, zero for a metric.
    pub deficit_max: Rational,
    /// κ: number of distinct positive deficit values.
    pub distinct_deficits: usize,
    /// L: the most light edges in any broken cycle.
    pub max_light_edges: usize,
    pub broken_cycle_count: usize,
}

impl Default for InstanceStats {
    fn default() -> Self {
        InstanceStats {
            deficit_max: Rational::zero(),
            distinct_deficits: 0,
            max_light_edges: 0,
            broken_cycle_count: 0,
        }
    }
}

/// Every broken cycle of a graph together with its statistics.
#[derive(Debug, Clone)]
pub struct BrokenCycleSet {
    pub cycles: Vec<BrokenCycle>,
    pub stats: InstanceStats,
}

impl BrokenCycleSet {
    /// True when `support` hits every broken cycle.
    pub fn is_regular_cover(&self, support: &BTreeSet<Edge>) -> bool {
        self.cycles
            .iter()
            .all(|c| c.edges().iter().any(|e| support.contains(e)))
    }

    /// True when `support` contains a light edge of every broken cycle.
    pub fn is_light_cover(&self, support: &BTreeSet<Edge>) -> bool {
        self.cycles
            .iter()
            .all(|c| c.light_edges().any(|e| support.contains(&e)))
    }
}

/// Finds the first edge (in lexicographic order) that is longer than the
/// shortest path between its endpoints, together with that path. The edge
/// plus the path form a broken cycle with the edge as heavy edge.
pub fn find_broken_witness(g: &WeightedGraph, oracle: &DistanceOracle) -> Option<(Edge, Vec<Edge>)> {
    g.edges().find_map(|(e, w)| {
        let (u, v) = e.endpoints();
        let d = oracle.scaled(u, v).expect("edge endpoints are connected");
        (oracle.scale_weight(w) > *d).then(|| (e, oracle.path_edges(u, v)))
    })
}

pub fn is_metric(g: &WeightedGraph) -> bool {
    find_broken_witness(g, &apsp(g)).is_none()
}

/// δ(G) = max over edges of `w(e) − d(u,v)`.
pub fn graph_deficit(g: &WeightedGraph, oracle: &DistanceOracle) -> Rational {
    let best = g
        .edges()
        .map(|(e, w)| {
            let (u, v) = e.endpoints();
            oracle.scale_weight(w) - oracle.scaled(u, v).expect("edge endpoints are connected")
        })
        .max();
    match best {
        Some(d) if d > Zero::zero() => Rational::new(d, oracle.scale().clone()),
        _ => Rational::zero(),
    }
}

/// Every chordless cycle with at most `cap` edges, in canonical form.
///
/// Paths are grown from their minimum vertex; a candidate vertex adjacent to
/// any interior path vertex is rejected outright, and one adjacent to the
/// start closes the cycle and is never extended further.
pub fn enumerate_chordless_cycles(g: &WeightedGraph, cap: usize) -> Vec<Cycle> {
    let mut out = Vec::new();
    if cap < 3 {
        return out;
    }
    let n = g.vertex_count();
    let mut on_path = vec![false; n];
    for s in 0..n {
        on_path[s] = true;
        for v1 in g.neighbors(s).filter(|&v| v > s).collect::<Vec<_>>() {
            let mut path = vec![s, v1];
            on_path[v1] = true;
            extend_chordless(g, cap, &mut path, &mut on_path, &mut out);
            on_path[v1] = false;
        }
        on_path[s] = false;
    }
    out
}

fn extend_chordless(g: &WeightedGraph, cap: usize, path: &mut Vec<usize>, on_path: &mut [bool], out: &mut Vec<Cycle>) {
    let s = path[0];
    let last = *path.last().unwrap();
    let candidates: Vec<usize> = g.neighbors(last).filter(|&x| x > s && !on_path[x]).collect();
    for x in candidates {
        let interior = &path[1..path.len() - 1];
        if interior.iter().any(|&p| g.is_adjacent(p, x)) {
            continue;
        }
        if g.is_adjacent(x, s) {
            if path.len() < cap && path[1] < x {
                let mut verts = path.clone();
                verts.push(x);
                out.push(Cycle { vertices: verts });
            }
            continue;
        }
        if path.len() + 2 <= cap {
            path.push(x);
            on_path[x] = true;
            extend_chordless(g, cap, path, on_path, out);
            on_path[x] = false;
            path.pop();
        }
    }
}

/// Visits every simple cycle once in canonical form; stops with an error once
/// more than `budget` cycles have been produced.
pub(crate) fn for_each_simple_cycle<F>(g: &WeightedGraph, budget: usize, mut visit: F) -> Result<()>
where
    F: FnMut(Cycle),
{
    let n = g.vertex_count();
    let mut on_path = vec![false; n];
    let mut seen = 0usize;
    for s in 0..n {
        on_path[s] = true;
        let mut path = vec![s];
        extend_simple(g, &mut path, &mut on_path, budget, &mut seen, &mut visit)?;
        on_path[s] = false;
    }
    Ok(())
}

fn extend_simple<F>(
    g: &WeightedGraph,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    budget: usize,
    seen: &mut usize,
    visit: &mut F,
) -> Result<()>
where
    F: FnMut(Cycle),
{
    let s = path[0];
    let last = *path.last().unwrap();
    let candidates: Vec<usize> = g.neighbors(last).collect();
    for x in candidates {
        if x == s && path.len() >= 3 && path[1] < last {
            *seen += 1;
            if *seen > budget {
                return Err(Error::CycleBudgetExceeded { budget });
            }
            visit(Cycle { vertices: path.clone() });
        }
        if x > s && !on_path[x] {
            path.push(x);
            on_path[x] = true;
            extend_simple(g, path, on_path, budget, seen, visit)?;
            on_path[x] = false;
            path.pop();
        }
    }
    Ok(())
}

/// All broken simple cycles of `g` with their statistics.
///
/// Fails if `g` has more than `budget` simple cycles in total.
pub fn enumerate_broken_cycles(g: &WeightedGraph, budget: usize) -> Result<BrokenCycleSet> {
    let mut cycles = Vec::new();
    for_each_simple_cycle(g, budget, |c| {
        if let Some(b) = BrokenCycle::from_cycle(g, c) {
            cycles.push(b);
        }
    })?;
    let mut stats = InstanceStats {
        broken_cycle_count: cycles.len(),
        ..InstanceStats::default()
    };
    let mut deficits = HashSet::new();
    for c in &cycles {
        if c.deficit() > &stats.deficit_max {
            stats.deficit_max = c.deficit().clone();
        }
        stats.max_light_edges = stats.max_light_edges.max(c.edges().len() - 1);
        deficits.insert(c.deficit().clone());
    }
    stats.distinct_deficits = deficits.len();
    Ok(BrokenCycleSet { cycles, stats })
}
