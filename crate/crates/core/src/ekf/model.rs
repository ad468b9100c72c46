//! Planar constant-velocity / constant-turn-rate state model.
//!
//! State: `[x, y, yaw, v, omega]` with `v` the longitudinal speed and
//! `omega` the yaw rate.

use nalgebra::{SMatrix, SVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{wrap_angle, Pose2D};

pub const STATE_DIM: usize = 5;
pub const IX: usize = 0;
pub const IY: usize = 1;
pub const IYAW: usize = 2;
pub const IV: usize = 3;
pub const IOMEGA: usize = 4;

pub type StateVec = SVector<f64, STATE_DIM>;
pub type StateMat = SMatrix<f64, STATE_DIM, STATE_DIM>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EkfConfig {
    /// Hz.
    pub predict_rate: f64,
    /// Per-state standard deviations per sqrt(second):
    /// `[x, y, yaw, v, omega]`.
    pub process_noise: [f64; STATE_DIM],
    /// Seconds of state history kept for late measurements.
    pub history_horizon: f64,
    pub smooth_steps: u32,
}

impl Default for EkfConfig {
    fn default() -> Self {
        Self {
            predict_rate: 50.0,
            process_noise: [0.05, 0.05, 0.01, 0.5, 0.1],
            history_horizon: 1.0,
            smooth_steps: 4,
        }
    }
}

impl EkfConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.predict_rate > 0.0 && self.predict_rate.is_finite()) {
            return Err(Error::config("ekf.predict_rate", "must be positive"));
        }
        if self.process_noise.iter().any(|q| !(*q >= 0.0 && q.is_finite())) {
            return Err(Error::config("ekf.process_noise", "entries must be finite and >= 0"));
        }
        if !(self.history_horizon >= 0.0 && self.history_horizon.is_finite()) {
            return Err(Error::config("ekf.history_horizon", "must be >= 0"));
        }
        if self.smooth_steps < 1 {
            return Err(Error::config("ekf.smooth_steps", "must be >= 1"));
        }
        Ok(())
    }

    pub fn dt(&self) -> f64 {
        1.0 / self.predict_rate
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EkfState {
    pub t: f64,
    pub mean: StateVec,
    pub cov: StateMat,
}

impl EkfState {
    pub fn new(t: f64, mean: StateVec, cov: StateMat) -> Self {
        let mut mean = mean;
        mean[IYAW] = wrap_angle(mean[IYAW]);
        Self { t, mean, cov }
    }

    /// State at `pose` with the given speed, zero yaw rate and diagonal
    /// covariance from standard deviations.
    pub fn from_pose(t: f64, pose: &Pose2D, speed: f64, stds: [f64; STATE_DIM]) -> Self {
        Self::new(
            t,
            StateVec::new(pose.x, pose.y, pose.yaw, speed, 0.0),
            StateMat::from_diagonal(&StateVec::from(stds.map(|s| s * s))),
        )
    }

    pub fn pose(&self) -> Pose2D {
        Pose2D::new(self.mean[IX], self.mean[IY], self.mean[IYAW])
    }

    pub fn is_positive_definite(&self) -> bool {
        let sym = (self.cov - self.cov.transpose()).abs().max() <= 1e-9;
        sym && self.cov.cholesky().is_some()
    }
}

pub fn motion(mean: &StateVec, dt: f64) -> StateVec {
    let (s, c) = mean[IYAW].sin_cos();
    let v = mean[IV];
    let w = mean[IOMEGA];
    StateVec::new(
        mean[IX] + v * c * dt,
        mean[IY] + v * s * dt,
        wrap_angle(mean[IYAW] + w * dt),
        v,
        w,
    )
}

pub fn motion_jacobian(mean: &StateVec, dt: f64) -> StateMat {
    let (s, c) = mean[IYAW].sin_cos();
    let v = mean[IV];
    let mut f = StateMat::identity();
    f[(IX, IYAW)] = -v * s * dt;
    f[(IX, IV)] = c * dt;
    f[(IY, IYAW)] = v * c * dt;
    f[(IY, IV)] = s * dt;
    f[(IYAW, IOMEGA)] = dt;
    f
}

pub fn process_noise(cfg: &EkfConfig, dt: f64) -> StateMat {
    StateMat::from_diagonal(&StateVec::from(cfg.process_noise.map(|q| q * q * dt)))
}

pub(crate) fn symmetrize(m: &StateMat) -> StateMat {
    (m + m.transpose()) * 0.5
}

pub fn predict(state: &EkfState, dt: f64, cfg: &EkfConfig) -> EkfState {
    assert!(dt > 0.0, "prediction step must be positive, got {dt}");
    let f = motion_jacobian(&state.mean, dt);
    let cov = symmetrize(&(f * state.cov * f.transpose() + process_noise(cfg, dt)));
    EkfState {
        t: state.t + dt,
        mean: motion(&state.mean, dt),
        cov,
    }
}
