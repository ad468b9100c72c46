//! Planar EKF fusing onboard and roadside pose measurements.

pub mod filter;
pub mod model;
pub mod update;

pub use filter::{DelayOutcome, Filter};
pub use model::{predict, EkfConfig, EkfState};
pub use update::{update, update_smooth};
