use serde::{Deserialize, Serialize};

use crate::covariance::{Axis, CovarianceSpec};
use crate::error::{Error, Result};
use crate::geometry::Pose2D;

/// Chassis dimensions a connected vehicle shares with the roadside unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VehicleSpec {
    pub id: String,
    pub length: f64,
    pub width: f64,
    pub height: f64,
}

impl VehicleSpec {
    pub fn new(id: impl Into<String>, length: f64, width: f64, height: f64) -> Result<Self> {
        let spec = Self {
            id: id.into(),
            length,
            width,
            height,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.width > 0.0 && self.length >= self.width && self.height > 0.0)
            || !self.length.is_finite()
            || !self.height.is_finite()
        {
            return Err(Error::InvalidInput(format!(
                "vehicle dimensions need length >= width > 0 and height > 0, got {}x{}x{}",
                self.length, self.width, self.height
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Source {
    Rsu,
    Ndt,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoseMeasurement {
    pub pose: Pose2D,
    pub cov: CovarianceSpec,
    pub stamp: f64,
    pub source: Source,
}

impl PoseMeasurement {
    pub fn new(pose: Pose2D, cov: CovarianceSpec, stamp: f64, source: Source) -> Result<Self> {
        if !(stamp >= 0.0 && stamp.is_finite()) {
            return Err(Error::InvalidInput(format!("bad stamp {stamp}")));
        }
        if !pose.is_valid() {
            return Err(Error::InvalidInput(format!("bad pose {pose:?}")));
        }
        if source == Source::Rsu {
            let mask = cov.mask();
            let vertical = [Axis::Z, Axis::Roll, Axis::Pitch, Axis::Yaw];
            if vertical.iter().any(|a| mask.contains(*a)) {
                return Err(Error::InvalidInput(
                    "roadside measurements observe x and y only".into(),
                ));
            }
        }
        Ok(Self {
            pose,
            cov,
            stamp,
            source,
        })
    }
}
