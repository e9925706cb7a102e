//! Exact branching solver for general repair on ς-chordal graphs,
//! parameterized by the optimum support size.
//!
//! A node of the search holds a partial support `S` and a budget `k`. If some
//! broken chordless cycle misses `S`, every optimal completion must take one
//! of its edges, so the search branches on them. Otherwise every chordless
//! cycle meeting `S` in a given subset `s` is compared on two scores: the
//! weight of its edges outside `s`, and the margin by which its heaviest edge
//! outside `s` beats the others outside `s`. Whatever weights an optimal
//! repair puts on `s`, if any cycle of that group is still broken then the
//! minimizer of the first score or the maximizer of the second is too, so
//! branching on the new edges of those two cycles (over all groups) always
//! reaches an edge of some optimal support.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::Zero;

use crate::cycles::{enumerate_chordless_cycles, BrokenCycle, Cycle};
use crate::error::Error;
use crate::graph::{Edge, WeightedGraph};
use crate::plan::{Mode, RepairPlan};
use crate::verifier::verify_support;
use crate::weight::Rational;
use crate::Result;

/// Default vertex bound up to which ς-chordality is checked exhaustively.
pub const DEFAULT_CHORDALITY_CHECK_BOUND: usize = 12;

#[derive(Debug, Clone)]
pub struct FptSolver {
    sigma: usize,
    k_max: Option<usize>,
    check_bound: usize,
}

/// Result of a search, with bookkeeping useful in tests and reports.
#[derive(Debug, Clone)]
pub struct FptOutcome {
    /// `None` only when `k_max` was set and is below the optimum.
    pub plan: Option<RepairPlan>,
    /// Whether ς-chordality was checked rather than assumed.
    pub chordality_verified: bool,
    /// False when the branching search failed (possible only if the graph is
    /// not actually ς-chordal) and the plan fell back to the full edge set.
    pub optimal: bool,
    /// Search nodes visited over all budgets.
    pub nodes: usize,
}

/// Branching pool for one search node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidates {
    pub edges: BTreeSet<Edge>,
    /// True when the pool is a single broken chordless cycle disjoint from `S`.
    pub from_disjoint_cycle: bool,
}

impl FptSolver {
    pub fn new(sigma: usize) -> Result<Self> {
        if sigma < 3 {
            return Err(Error::InvalidSigma(sigma));
        }
        Ok(FptSolver {
            sigma,
            k_max: None,
            check_bound: DEFAULT_CHORDALITY_CHECK_BOUND,
        })
    }

    pub fn with_k_max(mut self, k_max: Option<usize>) -> Self {
        self.k_max = k_max;
        self
    }

    /// Graphs with at most this many vertices are checked for ς-chordality
    /// before searching; larger ones are trusted.
    pub fn with_check_bound(mut self, bound: usize) -> Self {
        self.check_bound = bound;
        self
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn solve(&self, g: &WeightedGraph) -> Result<FptOutcome> {
        let (mut ctx, chordality_verified) = self.context(g)?;
        let limit = self.k_max.unwrap_or(g.edge_count()).min(g.edge_count());
        for k in 0..=limit {
            ctx.failed.clear();
            let mut support = BTreeSet::new();
            if let Some(plan) = ctx.search(&mut support, k)? {
                return Ok(FptOutcome {
                    plan: Some(plan),
                    chordality_verified,
                    optimal: true,
                    nodes: ctx.nodes,
                });
            }
        }
        if self.k_max.is_some_and(|k| k < g.edge_count()) {
            return Ok(FptOutcome {
                plan: None,
                chordality_verified,
                optimal: true,
                nodes: ctx.nodes,
            });
        }
        // Unreachable on ς-chordal input; the full edge set always verifies.
        let all: BTreeSet<Edge> = g.edges().map(|(e, _)| e).collect();
        let plan = verify_support(g, &all, Mode::General)?
            .ok_or_else(|| Error::Internal("full edge set failed to verify".into()))?;
        Ok(FptOutcome {
            plan: Some(plan),
            chordality_verified,
            optimal: false,
            nodes: ctx.nodes,
        })
    }

    /// The branching pool the search would build at partial support `s`.
    pub fn collect_candidates(&self, g: &WeightedGraph, s: &BTreeSet<Edge>) -> Result<Candidates> {
        g.check_subset(s)?;
        if verify_support(g, s, Mode::General)?.is_some() {
            return Err(Error::AlreadyCovered);
        }
        let (ctx, _) = self.context(g)?;
        Ok(ctx.collect(s))
    }

    fn context<'g>(&self, g: &'g WeightedGraph) -> Result<(Context<'g>, bool)> {
        let verified = g.vertex_count() <= self.check_bound;
        let cycles = if verified {
            let all = enumerate_chordless_cycles(g, g.vertex_count());
            if let Some(long) = all.iter().find(|c| c.len() > self.sigma) {
                return Err(Error::NotChordal {
                    sigma: self.sigma,
                    found: long.len(),
                });
            }
            all
        } else {
            enumerate_chordless_cycles(g, self.sigma)
        };
        Ok((Context::new(g, self.sigma, cycles), verified))
    }
}

/// Optimal general repair of a ς-chordal graph, or `None` if it needs more
/// than `k_max` edges.
pub fn fpt_solve(g: &WeightedGraph, sigma: usize, k_max: Option<usize>) -> Result<Option<RepairPlan>> {
    Ok(FptSolver::new(sigma)?.with_k_max(k_max).solve(g)?.plan)
}

struct IndexedCycle {
    edges: Vec<(Edge, Rational)>,
    broken: bool,
}

struct Context<'g> {
    g: &'g WeightedGraph,
    sigma: usize,
    cycles: Vec<IndexedCycle>,
    failed: HashSet<Vec<Edge>>,
    nodes: usize,
}

/// Best cycles of one group `{C : C ∩ S = s}`.
struct GroupBest {
    light: (Rational, usize),
    margin: Option<(Rational, usize)>,
}

impl<'g> Context<'g> {
    fn new(g: &'g WeightedGraph, sigma: usize, mut cycles: Vec<Cycle>) -> Self {
        cycles.sort();
        let cycles = cycles
            .into_iter()
            .filter(|c| c.len() <= sigma)
            .map(|c| {
                let mut edges: Vec<(Edge, Rational)> = c
                    .edges()
                    .into_iter()
                    .map(|e| (e, g.weight(e).unwrap().clone()))
                    .collect();
                edges.sort_by_key(|(e, _)| *e);
                IndexedCycle {
                    edges,
                    broken: BrokenCycle::from_cycle(g, c).is_some(),
                }
            })
            .collect();
        Context {
            g,
            sigma,
            cycles,
            failed: HashSet::new(),
            nodes: 0,
        }
    }

    fn search(&mut self, support: &mut BTreeSet<Edge>, k: usize) -> Result<Option<RepairPlan>> {
        self.nodes += 1;
        let key: Vec<Edge> = support.iter().copied().collect();
        if self.failed.contains(&key) {
            return Ok(None);
        }
        if support.len() == k {
            let found = verify_support(self.g, support, Mode::General)?;
            if found.is_none() {
                self.failed.insert(key);
            }
            return Ok(found);
        }
        let pool = self.collect(support);
        for e in pool.edges {
            support.insert(e);
            let found = self.search(support, k)?;
            support.remove(&e);
            if found.is_some() {
                return Ok(found);
            }
        }
        self.failed.insert(key);
        Ok(None)
    }

    fn collect(&self, support: &BTreeSet<Edge>) -> Candidates {
        if let Some(c) = self
            .cycles
            .iter()
            .find(|c| c.broken && c.edges.iter().all(|(e, _)| !support.contains(e)))
        {
            return Candidates {
                edges: c.edges.iter().map(|(e, _)| *e).collect(),
                from_disjoint_cycle: true,
            };
        }

        let mut groups: BTreeMap<Vec<Edge>, GroupBest> = BTreeMap::new();
        for (idx, c) in self.cycles.iter().enumerate() {
            let shared: Vec<Edge> = c
                .edges
                .iter()
                .map(|(e, _)| *e)
                .filter(|e| support.contains(e))
                .collect();
            // Cycles missing S are unbroken here (the first branch failed) and
            // stay unbroken whatever S is set to. A cycle inside S adds nothing.
            if shared.is_empty() || shared.len() == c.edges.len() || shared.len() > self.sigma - 1 {
                continue;
            }
            let outside = c.edges.iter().filter(|(e, _)| !support.contains(e));
            let mut light_sum = Rational::zero();
            let mut heaviest: Option<&Rational> = None;
            for (_, w) in outside {
                light_sum += w;
                // Edges are sorted, so the first maximum is the smallest edge.
                if heaviest.is_none_or(|h| w > h) {
                    heaviest = Some(w);
                }
            }
            let h = heaviest.expect("cycle has an edge outside S");
            let margin = h - (&light_sum - h);

            let entry = groups.entry(shared).or_insert_with(|| GroupBest {
                light: (light_sum.clone(), idx),
                margin: None,
            });
            if light_sum < entry.light.0 {
                entry.light = (light_sum, idx);
            }
            if entry.margin.as_ref().is_none_or(|(m, _)| margin > *m) {
                entry.margin = Some((margin, idx));
            }
        }

        let mut edges = BTreeSet::new();
        for best in groups.values() {
            let picks = [Some(best.light.1), best.margin.as_ref().map(|m| m.1)];
            for idx in picks.into_iter().flatten() {
                edges.extend(
                    self.cycles[idx]
                        .edges
                        .iter()
                        .map(|(e, _)| *e)
                        .filter(|e| !support.contains(e)),
                );
            }
        }
        debug_assert!(
            edges.len() <= pool_bound(self.sigma, support.len()),
            "branching pool exceeds 2ς|S|^ς"
        );
        Candidates {
            edges,
            from_disjoint_cycle: false,
        }
    }
}

/// `2ς·max(1,|S|)^ς`, saturating.
pub fn pool_bound(sigma: usize, support_size: usize) -> usize {
    let base = support_size.max(1);
    let mut pow: usize = 1;
    for _ in 0..sigma {
        pow = pow.saturating_mul(base);
    }
    pow.saturating_mul(2 * sigma)
}
