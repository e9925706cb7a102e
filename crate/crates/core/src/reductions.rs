//! Instance transformations between repair modes and from cut problems.

use std::collections::BTreeSet;

use num_traits::One;
use serde::Serialize;

use crate::error::Error;
use crate::exact::{check_pairs, heavy_edges};
use crate::graph::{Edge, SimpleGraph, WeightedGraph};
use crate::weight::{format_rational, Rational};
use crate::Result;

/// A transformed instance and how it was built.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionArtifact {
    #[serde(skip)]
    pub output: WeightedGraph,
    pub provenance: Provenance,
    /// How the optimum of `output` relates to the source optimum.
    pub opt_relation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reduction", rename_all = "snake_case")]
pub enum Provenance {
    IncreaseToGeneral {
        source_vertices: usize,
        /// The large gadget weight, `1 + max w`.
        z: String,
        gadgets_per_edge: usize,
        gadgets: Vec<Gadget>,
    },
    Multicut {
        source_vertices: usize,
        pairs: Vec<Edge>,
        pair_weight: usize,
        /// Pair edges deleted before the reduction; each counts toward the cut.
        committed: Vec<Edge>,
    },
    LbCut {
        source_vertices: usize,
        s: usize,
        t: usize,
        length_bound: usize,
        terminal_weight: usize,
        committed: Vec<Edge>,
    },
}

/// The vertices `first..first+count` added for one heavy edge. Each is
/// joined to `hub` with weight `z` and to the other endpoint with weight
/// `z - w(heavy)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gadget {
    pub heavy: Edge,
    pub hub: usize,
    pub first: usize,
    pub count: usize,
}

impl ReductionArtifact {
    /// Cut edges committed before the reduction. The source optimum is the
    /// output optimum plus this number.
    pub fn committed(&self) -> &[Edge] {
        match &self.provenance {
            Provenance::IncreaseToGeneral { .. } => &[],
            Provenance::Multicut { committed, .. } | Provenance::LbCut { committed, .. } => committed,
        }
    }
}

/// Turns increase-only repair into general repair.
///
/// For every heavy edge `(s, t)` (longer than the distance between its
/// endpoints) this adds `|E|+1` new vertices `v`, each with edges `(s, v)` of
/// weight `Z = 1 + max w` and `(t, v)` of weight `Z - w(s,t)`. Lowering a
/// heavy edge would then break `|E|+1` triangles, so an optimal general
/// repair of the output only raises light edges of the input.
pub fn increase_to_general(g: &WeightedGraph) -> ReductionArtifact {
    let n = g.vertex_count();
    let m = g.edge_count();
    let heavy: Vec<Edge> = heavy_edges(g).into_iter().collect();
    let z = g.max_weight() + Rational::one();
    let per = m + 1;

    let mut out = WeightedGraph::new(n + heavy.len() * per);
    for (e, w) in g.edges() {
        out.add_edge(e.low(), e.high(), w.clone())
            .expect("copied edge is valid");
    }
    let mut gadgets = Vec::with_capacity(heavy.len());
    for (i, &h) in heavy.iter().enumerate() {
        let (s, t) = h.endpoints();
        let far = &z - g.weight(h).expect("heavy edge in graph");
        let first = n + i * per;
        for v in first..first + per {
            out.add_edge(s, v, z.clone()).expect("gadget edge is valid");
            out.add_edge(t, v, far.clone()).expect("gadget edge is valid");
        }
        gadgets.push(Gadget {
            heavy: h,
            hub: s,
            first,
            count: per,
        });
    }
    ReductionArtifact {
        output: out,
        provenance: Provenance::IncreaseToGeneral {
            source_vertices: n,
            z: format_rational(&z),
            gadgets_per_edge: per,
            gadgets,
        },
        opt_relation: "OPT_general(output) = OPT_increase(input)".into(),
    }
}

/// MULTICUT as increase-only repair: graph edges get weight 1 and each
/// demand pair becomes an edge of weight `n`, so broken cycles are exactly a
/// pair edge plus a path joining the pair.
///
/// Pairs that are already adjacent are rejected.
pub fn multicut_to_mr(g: &SimpleGraph, pairs: &[(usize, usize)]) -> Result<ReductionArtifact> {
    multicut_inner(g, pairs, false)
}

/// Like [`multicut_to_mr`], but deletes pair edges from the graph first and
/// records them as committed cut edges.
pub fn multicut_to_mr_forced(g: &SimpleGraph, pairs: &[(usize, usize)]) -> Result<ReductionArtifact> {
    multicut_inner(g, pairs, true)
}

fn multicut_inner(g: &SimpleGraph, pairs: &[(usize, usize)], force: bool) -> Result<ReductionArtifact> {
    check_pairs(g, pairs)?;
    let n = g.vertex_count();
    let pair_edges: BTreeSet<Edge> = pairs.iter().map(|&(s, t)| Edge::new(s, t)).collect();
    let committed = commit(g, &pair_edges, force)?;
    let out = unit_plus(g, &committed, pair_edges.iter().map(|&e| (e, n)));
    Ok(ReductionArtifact {
        output: out,
        provenance: Provenance::Multicut {
            source_vertices: n,
            pairs: pair_edges.into_iter().collect(),
            pair_weight: n,
            committed: committed.into_iter().collect(),
        },
        opt_relation: "OPT_increase(output) + |committed| = OPT_multicut(input)".into(),
    })
}

/// Length-bounded cut as increase-only repair: unit weights plus an `(s, t)`
/// edge of weight `L+1`, which is broken together with exactly the `s`–`t`
/// paths of at most `L` edges.
pub fn lbcut_to_mr(g: &SimpleGraph, s: usize, t: usize, length: usize) -> Result<ReductionArtifact> {
    lbcut_inner(g, s, t, length, false)
}

pub fn lbcut_to_mr_forced(g: &SimpleGraph, s: usize, t: usize, length: usize) -> Result<ReductionArtifact> {
    lbcut_inner(g, s, t, length, true)
}

fn lbcut_inner(g: &SimpleGraph, s: usize, t: usize, length: usize, force: bool) -> Result<ReductionArtifact> {
    check_pairs(g, &[(s, t)])?;
    if length == 0 {
        return Err(Error::InvalidParameter("length bound must be at least 1".into()));
    }
    let terminal = Edge::new(s, t);
    let committed = commit(g, &BTreeSet::from([terminal]), force)?;
    let out = unit_plus(g, &committed, [(terminal, length + 1)]);
    Ok(ReductionArtifact {
        output: out,
        provenance: Provenance::LbCut {
            source_vertices: g.vertex_count(),
            s,
            t,
            length_bound: length,
            terminal_weight: length + 1,
            committed: committed.into_iter().collect(),
        },
        opt_relation: "OPT_increase(output) + |committed| = OPT_lbcut(input)".into(),
    })
}

/// Pair edges present in `g`: an error, or with `force` the set to delete.
fn commit(g: &SimpleGraph, pair_edges: &BTreeSet<Edge>, force: bool) -> Result<BTreeSet<Edge>> {
    let present: BTreeSet<Edge> = pair_edges.iter().copied().filter(|&e| g.has_edge(e)).collect();
    match present.first() {
        Some(&e) if !force => Err(Error::PairIsEdge(e)),
        _ => Ok(present),
    }
}

fn unit_plus<I>(g: &SimpleGraph, skip: &BTreeSet<Edge>, extra: I) -> WeightedGraph
where
    I: IntoIterator<Item = (Edge, usize)>,
{
    let mut out = WeightedGraph::new(g.vertex_count());
    for e in g.edges().filter(|e| !skip.contains(e)) {
        out.add_edge(e.low(), e.high(), Rational::one())
            .expect("source edge is valid");
    }
    for (e, w) in extra {
        out.add_edge(e.low(), e.high(), Rational::from_integer(w.into()))
            .expect("terminal edge is new");
    }
    out
}
