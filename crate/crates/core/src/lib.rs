//! Sparse metric repair for weighted graphs.
//!
//! Given an undirected graph whose positive edge weights may violate the
//! triangle inequality, find a set of edges whose weights can be modified so
//! that the graph becomes a metric, touching as few edges as possible.
//!
//! A cycle is *broken* when one of its edges (the heavy edge) weighs strictly
//! more than all other edges combined. A weighting is a metric exactly when no
//! cycle is broken, and a set of edges supports a repair exactly when it hits
//! every broken cycle (general repairs) or contains a non-heavy edge of every
//! broken cycle (increase-only repairs). Every solver in this crate reduces to
//! finding such a cover and handing it to [`verify_support`], which produces
//! the concrete new weights.
//!
//! All weights are exact rationals; nothing here uses floating point.

pub mod approx;
pub mod apsp;
pub mod complete;
pub mod cycles;
pub mod dmr;
mod error;
pub mod exact;
pub mod format;
pub mod fpt;
pub mod generate;
mod graph;
pub mod paths;
mod plan;
pub mod reductions;
pub mod verifier;
mod weight;

pub use approx::{count_heavy, count_light, deficit_greedy, short_path_cover, spc};
pub use apsp::{apsp, Distance, DistanceOracle};
pub use complete::{five_cycle_cover, iomr_adversarial, iomr_fixed, DistanceMatrix, IomrOutcome};
pub use cycles::{
    enumerate_broken_cycles, enumerate_chordless_cycles, find_broken_witness, graph_deficit, is_metric, BrokenCycle,
    BrokenCycleSet, Cycle, InstanceStats,
};
pub use dmr::decrease_repair;
pub use error::Error;
pub use exact::{brute_force_repair, brute_lbcut, brute_multicut};
pub use format::{emit_graph, parse_graph, ParseError};
pub use fpt::{fpt_solve, FptSolver};
pub use graph::{Edge, SimpleGraph, WeightedGraph};
pub use paths::{count_shortest_paths, PathCountTable, PathCounts};
pub use plan::{Mode, RepairPlan};
pub use verifier::verify_support;
pub use weight::{format_rational, parse_rational, Rational};

pub type Result<T, E = Error> = std::result::Result<T, E>;
