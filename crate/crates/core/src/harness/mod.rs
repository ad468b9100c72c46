//! Scenario configuration, simulation loop, metrics and report output.

pub mod config;
pub mod metrics;
pub mod ndt;
pub mod output;
pub mod road;
pub mod sim;
pub mod suite;

pub use config::ScenarioConfig;
pub use metrics::{compute_metrics, MetricsReport};
pub use ndt::ndt_surrogate;
pub use road::Road;
pub use sim::{run_scenario, TickRecord, TrajectoryLog};
pub use suite::{run_suite, run_sweep, SuiteReport};
