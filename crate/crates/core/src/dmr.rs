//! Decrease-only repair.

use crate::apsp::apsp;
use crate::graph::WeightedGraph;
use crate::plan::{Mode, RepairPlan};
use crate::weight::Rational;

/// Sets every edge to the shortest-path distance between its endpoints.
///
/// The support is exactly the set of edges longer than their endpoints'
/// distance. Every decrease-only repair must lower each of them, and lowering
/// each to that distance is the least change that does it, so the plan is
/// optimal in support size and in every ℓp norm.
pub fn decrease_repair(g: &WeightedGraph) -> RepairPlan {
    let oracle = apsp(g);
    let mut repaired = g.clone();
    for (e, w) in g.edges() {
        let (u, v) = e.endpoints();
        let d = oracle.scaled(u, v).expect("edge endpoints are connected");
        if *d < oracle.scale_weight(w) {
            repaired
                .set_weight(e, Rational::new(d.clone(), oracle.scale().clone()))
                .expect("shortest distances are positive");
        }
    }
    RepairPlan::from_repaired(g, repaired, Mode::DecreaseOnly).expect("distances never exceed weights")
}
