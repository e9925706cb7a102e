use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::weight::{format_rational, is_positive, Rational};
use crate::Result;

/// An undirected edge, stored with its smaller endpoint first.
///
/// The derived ordering is lexicographic on `(low, high)`, which is the edge
/// order every deterministic scan in this crate uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", from = "[usize; 2]")]
pub struct Edge {
    low: usize,
    high: usize,
}

impl Edge {
    /// Normalizes the endpoint order. Self-loops are representable here and
    /// rejected by the graph constructors.
    pub fn new(a: usize, b: usize) -> Self {
        Edge {
            low: a.min(b),
            high: a.max(b),
        }
    }

    pub fn low(self) -> usize {
        self.low
    }

    pub fn high(self) -> usize {
        self.high
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.low, self.high)
    }

    pub fn contains(self, v: usize) -> bool {
        self.low == v || self.high == v
    }

    /// The endpoint opposite `v`. `v` must be an endpoint.
    pub fn other(self, v: usize) -> usize {
        debug_assert!(self.contains(v));
        if self.low == v {
            self.high
        } else {
            self.low
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.low, self.high)
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.low, e.high]
    }
}

impl From<[usize; 2]> for Edge {
    fn from([a, b]: [usize; 2]) -> Self {
        Edge::new(a, b)
    }
}

/// Undirected graph on vertices `0..n` with strictly positive exact weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    weights: BTreeMap<Edge, Rational>,
    adjacency: Vec<BTreeSet<usize>>,
}

impl WeightedGraph {
    pub fn new(n: usize) -> Self {
        WeightedGraph {
            n,
            weights: BTreeMap::new(),
            adjacency: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut g = WeightedGraph::new(n);
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    /// Convenience for integer-weighted fixtures.
    pub fn from_int_edges(n: usize, edges: &[(usize, usize, i64)]) -> Result<Self> {
        Self::from_edges(
            n,
            edges.iter().map(|&(u, v, w)| (u, v, Rational::from_integer(w.into()))),
        )
    }

    pub fn add_edge(&mut self, u: usize, v: usize, weight: Rational) -> Result<()> {
        let e = self.checked_edge(u, v)?;
        if self.weights.contains_key(&e) {
            return Err(Error::DuplicateEdge(e));
        }
        if !is_positive(&weight) {
            return Err(Error::NonPositiveWeight(e, format_rational(&weight)));
        }
        self.weights.insert(e, weight);
        self.adjacency[u].insert(v);
        self.adjacency[v].insert(u);
        Ok(())
    }

    fn checked_edge(&self, u: usize, v: usize) -> Result<Edge> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(Edge::new(u, v))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, e: Edge) -> Option<&Rational> {
        self.weights.get(&e)
    }

    pub fn weight_between(&self, u: usize, v: usize) -> Option<&Rational> {
        self.weights.get(&Edge::new(u, v))
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.weights.contains_key(&e)
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].contains(&v)
    }

    /// Edges with weights in lexicographic edge order.
    pub fn edges(&self) -> impl Iterator<Item = (Edge, &Rational)> + '_ {
        self.weights.iter().map(|(e, w)| (*e, w))
    }

    pub fn edge_list(&self) -> Vec<Edge> {
        self.weights.keys().copied().collect()
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// `‖w‖∞`; zero for an edgeless graph.
    pub fn max_weight(&self) -> Rational {
        self.weights.values().max().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Copy of the graph with the given edges deleted.
    pub fn without_edges<'a, I>(&self, removed: I) -> WeightedGraph
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        let mut g = self.clone();
        for e in removed {
            if g.weights.remove(e).is_some() {
                g.adjacency[e.low].remove(&e.high);
                g.adjacency[e.high].remove(&e.low);
            }
        }
        g
    }

    /// Replaces the weight of an existing edge.
    pub fn set_weight(&mut self, e: Edge, weight: Rational) -> Result<()> {
        if !is_positive(&weight) {
            return Err(Error::NonPositiveWeight(e, format_rational(&weight)));
        }
        match self.weights.get_mut(&e) {
            Some(slot) => {
                *slot = weight;
                Ok(())
            }
            None => Err(Error::EdgeNotInGraph(e)),
        }
    }

    pub fn check_subset<'a, I>(&self, edges: I) -> Result<()>
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        for e in edges {
            if !self.has_edge(*e) {
                return Err(Error::EdgeNotInGraph(*e));
            }
        }
        Ok(())
    }
}

/// Unweighted undirected graph, the input of the cut problems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: BTreeSet<Edge>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let e = Edge::new(u, v);
            if !set.insert(e) {
                return Err(Error::DuplicateEdge(e));
            }
        }
        Ok(SimpleGraph { n, edges: set })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    /// Hop distances from `source` avoiding `removed`; `None` for unreachable.
    pub fn hop_distances(&self, source: usize, removed: &BTreeSet<Edge>) -> Vec<Option<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in self.edges.iter().filter(|e| !removed.contains(e)) {
            adj[e.low].push(e.high);
            adj[e.high].push(e.low);
        }
        let mut dist = vec![None; self.n];
        let mut queue = std::collections::VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &u in &adj[v] {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Same topology with every edge at weight one.
    pub fn to_unit_weighted(&self) -> WeightedGraph {
        let one = Rational::from_integer(1.into());
        WeightedGraph::from_edges(self.n, self.edges.iter().map(|e| (e.low, e.high, one.clone())))
            .expect("simple graph edges are valid")
    }
}
