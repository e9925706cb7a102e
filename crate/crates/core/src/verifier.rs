//! Support verification: does a candidate edge set admit a repair, and which.

use std::collections::BTreeSet;

use crate::apsp::{common_denominator, scale_by, DistanceOracle};
use crate::error::Error;
use crate::graph::{Edge, WeightedGraph};
use crate::plan::{Mode, RepairPlan};
use crate::weight::Rational;
use crate::Result;

/// Decides in O(n³) whether some general (or increase-only) repair modifies
/// only edges of `support`, and returns one if so.
///
/// Every supported edge is first raised to `M = ‖w‖∞`; then each edge takes
/// the shortest-path distance between its endpoints in that graph. The
/// result is accepted iff no edge outside the support moved (and, for
/// increase-only, no edge moved down). `Ok(None)` means the support is not a
/// regular cover (general) or light cover (increase-only) of the broken
/// cycles.
pub fn verify_support(g: &WeightedGraph, support: &BTreeSet<Edge>, mode: Mode) -> Result<Option<RepairPlan>> {
    if mode == Mode::DecreaseOnly {
        return Err(Error::UnsupportedMode(mode));
    }
    g.check_subset(support)?;
    let cap = g.max_weight();
    let scale = common_denominator(g.edges().map(|(_, w)| w));
    let scaled_cap = scale_by(&cap, &scale);
    let raised: Vec<(Edge, _)> = g
        .edges()
        .map(|(e, w)| {
            let w = if support.contains(&e) {
                scaled_cap.clone()
            } else {
                scale_by(w, &scale)
            };
            (e, w)
        })
        .collect();
    let oracle = DistanceOracle::from_scaled_edges(g.vertex_count(), scale, &raised);

    let mut repaired = g.clone();
    for (e, w) in g.edges() {
        let (u, v) = e.endpoints();
        let d = oracle.scaled(u, v).expect("edge endpoints are connected");
        let original = oracle.scale_weight(w);
        if *d == original {
            continue;
        }
        if !support.contains(&e) {
            return Ok(None);
        }
        if mode == Mode::IncreaseOnly && *d < original {
            return Ok(None);
        }
        debug_assert!(*d <= scaled_cap, "repaired weight exceeds the maximum input weight");
        let new = Rational::new(d.clone(), oracle.scale().clone());
        repaired.set_weight(e, new)?;
    }
    RepairPlan::from_repaired(g, repaired, mode).map(Some)
}
