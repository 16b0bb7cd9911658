//! Local optima networks of combinatorial fitness landscapes.
//!
//! The crate generates NK and QAP landscapes, enumerates their basins of
//! attraction under best-improvement hill climbing, builds basin-transition
//! and escape-edge networks over the local optima, measures those networks,
//! and benchmarks iterated local search against them.

pub mod error;
pub mod experiment;
pub mod export;
pub mod extract;
pub mod ils;
pub mod landscape;
pub mod metrics;
pub mod neighborhood;
pub mod network;
pub mod nk;
pub mod problem;
pub mod qap;
pub mod space;
pub mod stats;

pub use error::{Error, Result};
pub use extract::{
    basin_interior_fractions, basin_transition_lon, basins_from_table, enumerate_basins,
    escape_lon, BasinMap,
};
pub use ils::{estimate_ert, run_ils, run_restarts, ErtEstimate, IlsConfig, RunResult};
pub use landscape::{hill_climb, ClimbOutcome, Direction, FitnessTable, Landscape};
pub use metrics::{
    build_report, detect_communities, CommunityPartition, MetricsReport, ReportOptions,
};
pub use neighborhood::{Move, MoveOperator, Neighborhood};
pub use network::{EdgeModel, LocalOptimaNetwork, LonEdge, LonNode};
pub use nk::NkInstance;
pub use problem::{ProblemInstance, ProblemKind, ProblemSpec};
pub use qap::{QapClass, QapInstance};
pub use space::{BitString, Permutation, Representation, Solution};
