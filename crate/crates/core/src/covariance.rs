//! Six-degree-of-freedom diagonal covariance specifications.
//!
//! A [`CovarianceSpec`] stores standard deviations ordered as
//! `[x, y, z, roll, pitch, yaw]`. Dimensions a source does not measure are
//! marked [`Sigma::Unobserved`] and are dropped from the measurement model
//! instead of being approximated by a huge variance.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Standard deviation of the NDT surrogate, per axis.
pub const NDT_SIGMAS: [f64; 6] = [0.0225, 0.0225, 0.0225, 0.000625, 0.000625, 0.000625];
/// Horizontal standard deviation reported by a VLP-16 roadside unit.
pub const RSU_SIGMA_VLP16: f64 = 0.01486;
/// Horizontal standard deviation reported by a VLP-32C roadside unit.
pub const RSU_SIGMA_VLP32C: f64 = 0.00681;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Sigma {
    Std(f64),
    Unobserved,
}

impl Sigma {
    pub fn std(&self) -> Option<f64> {
        match *self {
            Sigma::Std(s) => Some(s),
            Sigma::Unobserved => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X = 0,
    Y = 1,
    Z = 2,
    Roll = 3,
    Pitch = 4,
    Yaw = 5,
}

impl Axis {
    pub const ALL: [Axis; 6] = [Axis::X, Axis::Y, Axis::Z, Axis::Roll, Axis::Pitch, Axis::Yaw];
}

/// Which of the six axes carry a finite standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ObservationMask(pub [bool; 6]);

impl ObservationMask {
    pub fn contains(&self, axis: Axis) -> bool {
        self.0[axis as usize]
    }

    pub fn axes(&self) -> impl Iterator<Item = Axis> + '_ {
        Axis::ALL.into_iter().filter(|a| self.contains(*a))
    }

    pub fn count(&self) -> usize {
        self.0.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CovarianceSpec {
    pub sigmas: [Sigma; 6],
}

impl CovarianceSpec {
    pub fn new(sigmas: [Sigma; 6]) -> Result<Self> {
        for (i, s) in sigmas.iter().enumerate() {
            if let Sigma::Std(v) = s {
                if !(v.is_finite() && *v > 0.0) {
                    return Err(Error::InvalidInput(format!(
                        "sigma[{i}] must be finite and positive, got {v}"
                    )));
                }
            }
        }
        Ok(Self { sigmas })
    }

    pub fn full(stds: [f64; 6]) -> Result<Self> {
        Self::new(stds.map(Sigma::Std))
    }

    pub fn ndt() -> Self {
        Self::full(NDT_SIGMAS).expect("constant sigmas are valid")
    }

    /// Horizontal-only covariance for a roadside unit: z, roll, pitch and yaw
    /// are unobserved.
    pub fn planar(sigma_xy: f64) -> Result<Self> {
        use Sigma::*;
        Self::new([
            Std(sigma_xy),
            Std(sigma_xy),
            Unobserved,
            Unobserved,
            Unobserved,
            Unobserved,
        ])
    }

    pub fn sigma(&self, axis: Axis) -> Sigma {
        self.sigmas[axis as usize]
    }

    pub fn mask(&self) -> ObservationMask {
        ObservationMask(self.sigmas.map(|s| matches!(s, Sigma::Std(_))))
    }

    /// Multiplies every observed variance by `factor`.
    pub fn scale_variance(&self, factor: f64) -> Self {
        let k = factor.sqrt();
        Self {
            sigmas: self.sigmas.map(|s| match s {
                Sigma::Std(v) => Sigma::Std(v * k),
                Sigma::Unobserved => Sigma::Unobserved,
            }),
        }
    }
}

/// Diagonal covariance over the observed axes, in axis order, plus the mask
/// telling which axes those are.
pub fn covariance_matrix(spec: &CovarianceSpec) -> (DMatrix<f64>, ObservationMask) {
    let mask = spec.mask();
    let vars: Vec<f64> = spec
        .sigmas
        .iter()
        .filter_map(Sigma::std)
        .map(|s| s * s)
        .collect();
    (DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vars)), mask)
}
