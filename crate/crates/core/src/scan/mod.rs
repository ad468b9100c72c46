//! Synthetic spinning-LiDAR sensing.
//!
//! Beam tables ship as plain-text files (one elevation in degrees per line,
//! `#` comments allowed). [`raycast`] intersects rays with the flat ground,
//! static boxes and the vehicle cuboid; [`generate`] sweeps a full rotation.

pub mod generate;
pub mod raycast;

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use generate::{generate_scan, generate_scan_with_info, ReturnInfo};
pub use raycast::{cast_ray, cast_ray_hit, Aabb, BackgroundScene, Hit, Surface, VehicleBoxState};

const VLP16_TABLE: &str = include_str!("../../data/vlp16.txt");
const VLP32C_TABLE: &str = include_str!("../../data/vlp32c.txt");

/// Default horizontal firing resolution.
pub const DEFAULT_AZIMUTH_STEP_DEG: f64 = 0.4;
pub const DEFAULT_RANGE_NOISE: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelId {
    Vlp16,
    Vlp32c,
    Custom,
}

impl ModelId {
    /// Sensor-to-vehicle distance up to which the roadside pipeline reports.
    pub fn default_effective_range(&self) -> Option<f64> {
        match self {
            ModelId::Vlp16 => Some(30.0),
            ModelId::Vlp32c => Some(50.0),
            ModelId::Custom => None,
        }
    }
}

impl std::fmt::Display for ModelId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ModelId::Vlp16 => "vlp16",
            ModelId::Vlp32c => "vlp32c",
            ModelId::Custom => "custom",
        })
    }
}

impl std::str::FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "vlp16" | "vlp-16" => Ok(ModelId::Vlp16),
            "vlp32c" | "vlp-32c" => Ok(ModelId::Vlp32c),
            "custom" => Ok(ModelId::Custom),
            other => Err(Error::InvalidInput(format!("unknown sensor model `{other}`"))),
        }
    }
}

/// Parses a beam table: one elevation in degrees per non-empty line.
/// Returns radians, sorted ascending.
pub fn parse_beam_table(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let deg: f64 = line.parse().map_err(|_| {
            Error::InvalidInput(format!("beam table line {}: `{line}`", lineno + 1))
        })?;
        if !deg.is_finite() || deg.abs() >= 90.0 {
            return Err(Error::InvalidInput(format!(
                "beam table line {}: elevation {deg} out of range",
                lineno + 1
            )));
        }
        out.push(deg.to_radians());
    }
    if out.is_empty() {
        return Err(Error::InvalidInput("empty beam table".into()));
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

pub fn load_beam_table(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_beam_table(&text)
}

/// Elevation table for a known model. `Custom` has no built-in table.
pub fn beam_table(model: ModelId) -> Result<Vec<f64>> {
    match model {
        ModelId::Vlp16 => parse_beam_table(VLP16_TABLE),
        ModelId::Vlp32c => parse_beam_table(VLP32C_TABLE),
        ModelId::Custom => Err(Error::InvalidInput(
            "custom sensors need explicit elevations".into(),
        )),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SensorModel {
    pub model_id: ModelId,
    /// Radians, ascending.
    pub elevations: Vec<f64>,
    /// Radians between firing columns.
    pub azimuth_step: f64,
    pub max_range: f64,
    pub range_noise_sigma: f64,
    pub rate: f64,
}

impl SensorModel {
    pub fn new(
        model_id: ModelId,
        elevations: Vec<f64>,
        azimuth_step: f64,
        max_range: f64,
        range_noise_sigma: f64,
        rate: f64,
    ) -> Result<Self> {
        let m = Self {
            model_id,
            elevations,
            azimuth_step,
            max_range,
            range_noise_sigma,
            rate,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.elevations.is_empty() {
            return Err(Error::InvalidInput("sensor needs at least one elevation".into()));
        }
        if self.elevations.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidInput("elevations must be sorted".into()));
        }
        if !(self.azimuth_step > 0.0 && self.azimuth_step < std::f64::consts::PI / 8.0) {
            return Err(Error::InvalidInput(format!(
                "azimuth step {} outside (0, pi/8)",
                self.azimuth_step
            )));
        }
        if self.max_range.is_nan() || self.max_range <= 0.0 {
            return Err(Error::InvalidInput("max_range must be positive".into()));
        }
        if self.range_noise_sigma.is_nan() || self.range_noise_sigma < 0.0 {
            return Err(Error::InvalidInput("range noise must be non-negative".into()));
        }
        if self.rate.is_nan() || self.rate <= 0.0 {
            return Err(Error::InvalidInput("rate must be positive".into()));
        }
        Ok(())
    }

    pub fn vlp16() -> Self {
        Self {
            model_id: ModelId::Vlp16,
            elevations: beam_table(ModelId::Vlp16).expect("bundled table"),
            azimuth_step: DEFAULT_AZIMUTH_STEP_DEG.to_radians(),
            max_range: 100.0,
            range_noise_sigma: DEFAULT_RANGE_NOISE,
            rate: 10.0,
        }
    }

    pub fn vlp32c() -> Self {
        Self {
            model_id: ModelId::Vlp32c,
            elevations: beam_table(ModelId::Vlp32c).expect("bundled table"),
            azimuth_step: DEFAULT_AZIMUTH_STEP_DEG.to_radians(),
            max_range: 200.0,
            range_noise_sigma: DEFAULT_RANGE_NOISE,
            rate: 10.0,
        }
    }

    pub fn for_model(model: ModelId) -> Result<Self> {
        match model {
            ModelId::Vlp16 => Ok(Self::vlp16()),
            ModelId::Vlp32c => Ok(Self::vlp32c()),
            ModelId::Custom => Err(Error::InvalidInput(
                "custom sensors need explicit elevations".into(),
            )),
        }
    }

    pub fn custom(elevations: Vec<f64>) -> Result<Self> {
        Self::new(
            ModelId::Custom,
            elevations,
            DEFAULT_AZIMUTH_STEP_DEG.to_radians(),
            100.0,
            DEFAULT_RANGE_NOISE,
            10.0,
        )
    }

    pub fn columns(&self) -> usize {
        (std::f64::consts::TAU / self.azimuth_step).ceil() as usize
    }
}
