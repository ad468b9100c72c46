//! Cooperative vehicle localization with a roadside LiDAR.
//!
//! A simulated roadside unit scans a vehicle driving past, extracts its
//! silhouette against a vehicle-free reference, fits an oriented rectangle
//! and refines it with the vehicle's known dimensions. The resulting planar
//! pose travels over a lossy, delayed channel and is fused with noisy
//! onboard localization in an extended Kalman filter.

pub mod channel;
pub mod covariance;
pub mod ekf;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod measurement;
pub mod perception;
pub mod rng;
pub mod scan;

pub use error::{Error, Result};
