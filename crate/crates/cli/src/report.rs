use std::collections::BTreeSet;

use metric_repair::complete::{DistanceMatrix, IomrOutcome};
use metric_repair::{enumerate_broken_cycles, format_rational, is_metric, Edge, Mode, RepairPlan, WeightedGraph};
use serde::Serialize;

use crate::{Failure, STATS_EDGE_LIMIT};

/// Output of `repair` and `verify`. Field order is part of the format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepairReport {
    pub algo: String,
    pub omega: String,
    pub support: Vec<[usize; 2]>,
    /// `[u, v, change]`, the change as an exact rational string.
    pub deltas: Vec<(usize, usize, String)>,
    pub support_size: usize,
    pub wall_ms: u64,
    pub metric_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<StatsReport>,
}

impl RepairReport {
    pub fn from_plan(algo: &str, plan: &RepairPlan) -> Self {
        RepairReport {
            algo: algo.to_string(),
            omega: plan.mode().to_string(),
            support: plan.support().iter().map(|&e| e.into()).collect(),
            deltas: plan
                .delta()
                .iter()
                .map(|(e, d)| (e.low(), e.high(), format_rational(d)))
                .collect(),
            support_size: plan.support_size(),
            wall_ms: 0,
            metric_ok: is_metric(plan.repaired()),
            stats: None,
        }
    }

    pub fn from_matrix(original: &DistanceMatrix, outcome: &IomrOutcome) -> Self {
        let deltas = outcome
            .modified
            .iter()
            .map(|e| {
                let (u, v) = e.endpoints();
                let d = outcome.repaired.get(u, v) - original.get(u, v);
                (u, v, format_rational(&d))
            })
            .collect();
        RepairReport {
            algo: "iomr".into(),
            omega: Mode::IncreaseOnly.to_string(),
            support: outcome.modified.iter().map(|&e| e.into()).collect(),
            deltas,
            support_size: outcome.modified_count(),
            wall_ms: 0,
            metric_ok: outcome.repaired.is_metric(),
            stats: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatsReport {
    pub deficit_max: String,
    pub kappa: usize,
    #[serde(rename = "L")]
    pub max_light_edges: usize,
    pub broken_cycles: usize,
}

impl StatsReport {
    /// Enumerates every simple cycle, so it refuses large graphs.
    pub fn compute(g: &WeightedGraph, budget: usize) -> Result<Self, Failure> {
        if g.edge_count() > STATS_EDGE_LIMIT {
            return Err(Failure::Input(format!(
                "statistics need exhaustive cycle enumeration; {} edges exceeds the limit of {STATS_EDGE_LIMIT}",
                g.edge_count()
            )));
        }
        let set = enumerate_broken_cycles(g, budget)?;
        Ok(StatsReport {
            deficit_max: format_rational(&set.stats.deficit_max),
            kappa: set.stats.distinct_deficits,
            max_light_edges: set.stats.max_light_edges,
            broken_cycles: set.stats.broken_cycle_count,
        })
    }
}

/// Output of `cut`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutReport {
    pub problem: String,
    pub size: usize,
    pub cut: Vec<[usize; 2]>,
}

impl CutReport {
    pub fn new(problem: &str, cut: BTreeSet<Edge>) -> Self {
        CutReport {
            problem: problem.into(),
            size: cut.len(),
            cut: cut.into_iter().map(Into::into).collect(),
        }
    }
}
