use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{Edge, WeightedGraph};
use crate::weight::Rational;
use crate::Result;

/// Which per-edge modifications a repair may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Weights may only go down.
    #[serde(rename = "decrease")]
    DecreaseOnly,
    /// Weights may only go up.
    #[serde(rename = "increase")]
    IncreaseOnly,
    General,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::DecreaseOnly => "decrease",
            Mode::IncreaseOnly => "increase",
            Mode::General => "general",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "decrease" | "decrease-only" => Ok(Mode::DecreaseOnly),
            "increase" | "increase-only" => Ok(Mode::IncreaseOnly),
            "general" => Ok(Mode::General),
            other => Err(Error::InvalidParameter(format!("unknown mode `{other}`"))),
        }
    }
}

/// A solver's answer: the modified edges and their new weights.
///
/// `support` lists exactly the edges whose weight changed, so its size is
/// the number of modifications.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairPlan {
    mode: Mode,
    support: BTreeSet<Edge>,
    delta: BTreeMap<Edge, Rational>,
    repaired: WeightedGraph,
}

impl RepairPlan {
    /// Builds a plan from the original graph and the repaired weighting of the
    /// same edge set. Unchanged edges are dropped from the support.
    pub(crate) fn from_repaired(original: &WeightedGraph, repaired: WeightedGraph, mode: Mode) -> Result<Self> {
        debug_assert_eq!(original.edge_count(), repaired.edge_count());
        let mut delta = BTreeMap::new();
        for (e, w) in original.edges() {
            let new = repaired.weight(e).ok_or(Error::EdgeNotInGraph(e))?;
            let d = new - w;
            if d.is_zero() {
                continue;
            }
            let sign_ok = match mode {
                Mode::DecreaseOnly => d.is_negative(),
                Mode::IncreaseOnly => d.is_positive(),
                Mode::General => true,
            };
            if !sign_ok {
                return Err(Error::Internal(format!(
                    "edge {e} changed in the wrong direction for {mode} mode"
                )));
            }
            delta.insert(e, d);
        }
        Ok(RepairPlan {
            mode,
            support: delta.keys().copied().collect(),
            delta,
            repaired,
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn support(&self) -> &BTreeSet<Edge> {
        &self.support
    }

    pub fn support_size(&self) -> usize {
        self.support.len()
    }

    /// `W(e)` for every edge in the support, all nonzero.
    pub fn delta(&self) -> &BTreeMap<Edge, Rational> {
        &self.delta
    }

    /// The graph under `w + W`.
    pub fn repaired(&self) -> &WeightedGraph {
        &self.repaired
    }
}
