//! Exhaustive subset-search oracles.
//!
//! Each search tries supports in increasing size and, within a size, in
//! lexicographic order of edge indices, so the answer is the first optimum in
//! that order.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::apsp::apsp;
use crate::dmr::decrease_repair;
use crate::error::Error;
use crate::graph::{Edge, SimpleGraph, WeightedGraph};
use crate::plan::{Mode, RepairPlan};
use crate::verifier::verify_support;
use crate::Result;

/// Default ceiling on the number of edges for exhaustive search.
pub const DEFAULT_EDGE_CAP: usize = 16;

/// Minimum-support repair by subset search, with the default edge cap.
pub fn brute_force_repair(g: &WeightedGraph, mode: Mode) -> Result<RepairPlan> {
    brute_force_repair_capped(g, mode, DEFAULT_EDGE_CAP)
}

pub fn brute_force_repair_capped(g: &WeightedGraph, mode: Mode, cap: usize) -> Result<RepairPlan> {
    check_cap(g.edge_count(), cap)?;
    let edges = g.edge_list();
    let heavy = heavy_edges(g);
    for k in 0..=edges.len() {
        for combo in (0..edges.len()).combinations(k) {
            let s: BTreeSet<Edge> = combo.iter().map(|&i| edges[i]).collect();
            match mode {
                Mode::DecreaseOnly => {
                    if heavy.is_subset(&s) {
                        return Ok(decrease_repair(g));
                    }
                }
                _ => {
                    if let Some(plan) = verify_support(g, &s, mode)? {
                        return Ok(plan);
                    }
                }
            }
        }
    }
    // The full edge set always supports a general or increase-only repair.
    Err(Error::Internal("no support found among all edge subsets".into()))
}

/// Edges strictly longer than the distance between their endpoints.
pub(crate) fn heavy_edges(g: &WeightedGraph) -> BTreeSet<Edge> {
    let oracle = apsp(g);
    g.edges()
        .filter(|(e, w)| {
            let (u, v) = e.endpoints();
            oracle.scaled(u, v).expect("endpoints are adjacent") < &oracle.scale_weight(w)
        })
        .map(|(e, _)| e)
        .collect()
}

/// Minimum edge set whose removal disconnects every pair.
pub fn brute_multicut(g: &SimpleGraph, pairs: &[(usize, usize)], cap: usize) -> Result<BTreeSet<Edge>> {
    check_pairs(g, pairs)?;
    min_cut(g, cap, |removed| {
        pairs.iter().all(|&(s, t)| g.hop_distances(s, removed)[t].is_none())
    })
}

/// Minimum edge set whose removal leaves no `s`–`t` path with at most
/// `length` edges.
pub fn brute_lbcut(g: &SimpleGraph, s: usize, t: usize, length: usize, cap: usize) -> Result<BTreeSet<Edge>> {
    check_pairs(g, &[(s, t)])?;
    min_cut(g, cap, |removed| {
        g.hop_distances(s, removed)[t].is_none_or(|d| d > length)
    })
}

fn min_cut<F>(g: &SimpleGraph, cap: usize, done: F) -> Result<BTreeSet<Edge>>
where
    F: Fn(&BTreeSet<Edge>) -> bool,
{
    check_cap(g.edge_count(), cap)?;
    let edges: Vec<Edge> = g.edges().collect();
    for k in 0..=edges.len() {
        for combo in (0..edges.len()).combinations(k) {
            let removed: BTreeSet<Edge> = combo.iter().map(|&i| edges[i]).collect();
            if done(&removed) {
                return Ok(removed);
            }
        }
    }
    Err(Error::Internal(
        "removing every edge did not separate the terminals".into(),
    ))
}

fn check_cap(edges: usize, cap: usize) -> Result<()> {
    if edges > cap {
        return Err(Error::EdgeCapExceeded { edges, cap });
    }
    Ok(())
}

pub(crate) fn check_pairs(g: &SimpleGraph, pairs: &[(usize, usize)]) -> Result<()> {
    let n = g.vertex_count();
    for &(s, t) in pairs {
        for v in [s, t] {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        if s == t {
            return Err(Error::InvalidParameter(format!(
                "terminal pair ({s}, {t}) repeats a vertex"
            )));
        }
    }
    Ok(())
}
