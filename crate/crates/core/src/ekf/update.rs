use nalgebra::{DMatrix, DVector};

use super::model::{symmetrize, EkfConfig, EkfState, StateMat, StateVec, IX, IY, IYAW, STATE_DIM};
use crate::covariance::{Axis, Sigma};
use crate::error::{Error, Result};
use crate::geometry::wrap_angle;
use crate::measurement::PoseMeasurement;

/// Planar state index observed by a six-axis measurement axis, if any.
fn state_index(axis: Axis) -> Option<usize> {
    match axis {
        Axis::X => Some(IX),
        Axis::Y => Some(IY),
        Axis::Yaw => Some(IYAW),
        Axis::Z | Axis::Roll | Axis::Pitch => None,
    }
}

/// Observed state indices and their variances after projecting the
/// measurement covariance onto the planar state.
pub fn observed_dims(meas: &PoseMeasurement) -> Vec<(usize, f64)> {
    Axis::ALL
        .into_iter()
        .filter_map(|a| match (state_index(a), meas.cov.sigma(a)) {
            (Some(i), Sigma::Std(s)) => Some((i, s * s)),
            _ => None,
        })
        .collect()
}

/// EKF correction with the measurement variance multiplied by `var_scale`.
pub fn update_scaled(state: &EkfState, meas: &PoseMeasurement, var_scale: f64) -> Result<EkfState> {
    let dims = observed_dims(meas);
    if dims.is_empty() {
        return Err(Error::InvalidInput(
            "measurement observes no planar state".into(),
        ));
    }
    let m = dims.len();
    let mut h = DMatrix::<f64>::zeros(m, STATE_DIM);
    let mut r = DMatrix::<f64>::zeros(m, m);
    let mut innov = DVector::<f64>::zeros(m);
    let z = [meas.pose.x, meas.pose.y, meas.pose.yaw];
    for (row, &(idx, var)) in dims.iter().enumerate() {
        h[(row, idx)] = 1.0;
        r[(row, row)] = var * var_scale;
        innov[row] = z[idx] - state.mean[idx];
        if idx == IYAW {
            innov[row] = wrap_angle(innov[row]);
        }
    }

    let p = DMatrix::from_column_slice(STATE_DIM, STATE_DIM, state.cov.as_slice());
    let s = &h * &p * h.transpose() + &r;
    let s_chol = s
        .cholesky()
        .ok_or_else(|| Error::NotPositiveDefinite("innovation covariance".into()))?;
    // K = P Hᵀ S⁻¹, computed as (S⁻¹ H P)ᵀ
    let k = s_chol.solve(&(&h * &p)).transpose();

    let dx = &k * innov;
    let mut mean = state.mean + StateVec::from_column_slice(dx.as_slice());
    mean[IYAW] = wrap_angle(mean[IYAW]);

    let ikh = DMatrix::<f64>::identity(STATE_DIM, STATE_DIM) - &k * &h;
    let joseph = &ikh * &p * ikh.transpose() + &k * &r * k.transpose();
    let cov = symmetrize(&StateMat::from_column_slice(joseph.as_slice()));
    let out = EkfState {
        t: state.t,
        mean,
        cov,
    };
    if out.cov.cholesky().is_none() {
        return Err(Error::NotPositiveDefinite(format!(
            "posterior after {:?} update at t={}",
            meas.source, state.t
        )));
    }
    Ok(out)
}

pub fn update(state: &EkfState, meas: &PoseMeasurement, _cfg: &EkfConfig) -> Result<EkfState> {
    update_scaled(state, meas, 1.0)
}

/// Splits one measurement into `k` partial corrections, each with its
/// variance inflated by `k`. Returns the state after every partial step;
/// no prediction happens in between.
pub fn update_smooth(state: &EkfState, meas: &PoseMeasurement, k: u32) -> Result<Vec<EkfState>> {
    if k < 1 {
        return Err(Error::InvalidInput("smooth steps must be >= 1".into()));
    }
    let mut out = Vec::with_capacity(k as usize);
    let mut cur = state.clone();
    for _ in 0..k {
        cur = update_scaled(&cur, meas, k as f64)?;
        out.push(cur.clone());
    }
    Ok(out)
}
