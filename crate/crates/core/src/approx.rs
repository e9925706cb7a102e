//! Approximation algorithms: short path cover and deficit greedy.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::apsp::{apsp, DistanceOracle};
use crate::cycles::{find_broken_witness, graph_deficit};
use crate::error::Error;
use crate::graph::{Edge, WeightedGraph};
use crate::paths::PathCountTable;
use crate::plan::{Mode, RepairPlan};
use crate::verifier::verify_support;
use crate::weight::Rational;
use crate::Result;

/// Short path cover.
///
/// Repeatedly finds an edge longer than its endpoints' shortest path in the
/// working graph and deletes that path, plus the edge itself in general mode.
/// Each deleted cycle is broken in the input, so it holds an edge of every
/// optimal support: the result is within a factor `L+1` (general) or `L`
/// (increase-only) of optimal, `L` being the most light edges in any broken
/// cycle.
pub fn spc(g: &WeightedGraph, mode: Mode) -> Result<RepairPlan> {
    let removed = short_path_cover(g, mode)?;
    verify_support(g, &removed, mode)?.ok_or_else(|| Error::Internal("short path cover is not a cover".into()))
}

/// The edge set deleted by [`spc`] before verification. The plan's support
/// is the subset of it whose weights actually change.
pub fn short_path_cover(g: &WeightedGraph, mode: Mode) -> Result<BTreeSet<Edge>> {
    if mode == Mode::DecreaseOnly {
        return Err(Error::UnsupportedMode(mode));
    }
    let mut working = g.clone();
    let mut removed = BTreeSet::new();
    loop {
        let oracle = apsp(&working);
        let Some((heavy, path)) = find_broken_witness(&working, &oracle) else {
            break;
        };
        let mut cut = path;
        if mode == Mode::General {
            cut.push(heavy);
        }
        working = working.without_edges(&cut);
        removed.extend(cut);
    }
    Ok(removed)
}

/// Graph-wide scaled quantities shared by the two counting routines.
struct Scaled<'a> {
    g: &'a WeightedGraph,
    oracle: &'a DistanceOracle,
    deficit: BigInt,
}

impl<'a> Scaled<'a> {
    fn new(g: &'a WeightedGraph, oracle: &'a DistanceOracle, deficit: &Rational) -> Self {
        Scaled {
            g,
            oracle,
            deficit: oracle.scale_weight(deficit),
        }
    }

    fn weight(&self, e: Edge) -> BigInt {
        self.oracle.scale_weight(self.g.weight(e).expect("edge in graph"))
    }

    fn dist(&self, a: usize, b: usize) -> Option<&BigInt> {
        self.oracle.scaled(a, b)
    }

    /// Is `w(f) = d(a,s) + w(e) + d(t,b) + δ`?
    fn closes(&self, wf: &BigInt, a: usize, s: usize, we: &BigInt, t: usize, b: usize) -> bool {
        match (self.dist(a, s), self.dist(t, b)) {
            (Some(x), Some(y)) => *wf == x + we + y + &self.deficit,
            _ => false,
        }
    }
}

/// `N_h(e, δ)`: the number of broken cycles of deficit `δ = δ(G)` whose heavy
/// edge is `e`. Such a cycle is `e` plus a shortest path between its
/// endpoints, and exists only if `w(e) = d(s,t) + δ`.
pub fn count_heavy(
    g: &WeightedGraph,
    oracle: &DistanceOracle,
    counts: &PathCountTable,
    e: Edge,
    deficit: &Rational,
) -> BigUint {
    let sc = Scaled::new(g, oracle, deficit);
    let (s, t) = e.endpoints();
    match sc.dist(s, t) {
        Some(d) if sc.weight(e) == d + &sc.deficit => counts.get(s, t).clone(),
        _ => BigUint::zero(),
    }
}

/// `N_l(e, δ)`: the number of broken cycles of deficit `δ = δ(G)` that use
/// `e = (s,t)` as a light edge.
///
/// A maximum-deficit cycle with heavy edge `f = (a,b)` consists of `f` and a
/// shortest `a`–`b` path; if that path runs through `e` it visits the four
/// endpoints as `a,s,t,b` or `b,s,t,a`. Summing the shortest-path
/// multiplicities of the two segments over both orientations gives the count.
/// Segments that happen to share vertices are still counted.
pub fn count_light(
    g: &WeightedGraph,
    oracle: &DistanceOracle,
    counts: &PathCountTable,
    e: Edge,
    deficit: &Rational,
) -> BigUint {
    let sc = Scaled::new(g, oracle, deficit);
    let (s, t) = e.endpoints();
    let we = sc.weight(e);
    let mut total = BigUint::zero();
    for (f, wf) in g.edges() {
        let wf = oracle.scale_weight(wf);
        let (a, b) = f.endpoints();
        if sc.closes(&wf, a, s, &we, t, b) {
            total += counts.get(a, s) * counts.get(t, b);
        }
        if sc.closes(&wf, b, s, &we, t, a) {
            total += counts.get(b, s) * counts.get(t, a);
        }
    }
    total
}

/// Deficit greedy.
///
/// Each round computes `δ(G)` on the working graph, counts for every edge the
/// maximum-deficit broken cycles through it (as heavy or light edge in
/// general mode, as light edge only in increase-only mode), and deletes the
/// edge with the highest count, ties going to the smallest edge. Stops when
/// the working graph is a metric and verifies the deleted set.
pub fn deficit_greedy(g: &WeightedGraph, mode: Mode) -> Result<RepairPlan> {
    if mode == Mode::DecreaseOnly {
        return Err(Error::UnsupportedMode(mode));
    }
    let mut working = g.clone();
    let mut removed = BTreeSet::new();
    let mut last_deficit: Option<Rational> = None;
    loop {
        let oracle = apsp(&working);
        let deficit = graph_deficit(&working, &oracle);
        if deficit.is_zero() {
            break;
        }
        if let Some(prev) = &last_deficit {
            if deficit > *prev {
                return Err(Error::Internal("graph deficit increased".into()));
            }
        }
        let counts = PathCountTable::build(&working, &oracle);
        let mut best: Option<(BigUint, Edge)> = None;
        for (e, _) in working.edges() {
            let mut count = count_light(&working, &oracle, &counts, e, &deficit);
            if mode == Mode::General {
                count += count_heavy(&working, &oracle, &counts, e, &deficit);
            }
            if best.as_ref().is_none_or(|(c, _)| count > *c) {
                best = Some((count, e));
            }
        }
        let (_, pick) = best.expect("a graph with positive deficit has edges");
        working = working.without_edges(&[pick]);
        removed.insert(pick);
        last_deficit = Some(deficit);
    }
    verify_support(g, &removed, mode)?.ok_or_else(|| Error::Internal("deficit greedy output is not a cover".into()))
}
