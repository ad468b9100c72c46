//! Scenario description, loaded from TOML with unknown keys rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::road::Road;
use crate::channel::ChannelConfig;
use crate::covariance::{RSU_SIGMA_VLP16, RSU_SIGMA_VLP32C};
use crate::ekf::EkfConfig;
use crate::error::{Error, Result};
use crate::geometry::{MountPose, Point2, Point3, Pose2D};
use crate::measurement::VehicleSpec;
use crate::perception::PerceptionParams;
use crate::scan::{self, Aabb, BackgroundScene, ModelId, SensorModel};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoadConfig {
    pub points: Road,
    /// m/s
    pub speed: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VehicleConfig {
    #[serde(default = "default_vehicle_id")]
    pub id: String,
    pub length: f64,
    pub width: f64,
    pub height: f64,
    /// Arc length at t = 0.
    #[serde(default)]
    pub start_offset: f64,
    #[serde(default)]
    pub mirrors: bool,
}

fn default_vehicle_id() -> String {
    "ego".into()
}

impl VehicleConfig {
    pub fn spec(&self) -> Result<VehicleSpec> {
        VehicleSpec::new(self.id.clone(), self.length, self.width, self.height)
            .map_err(|e| Error::config("vehicle", e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RsuConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub x: f64,
    pub y: f64,
    #[serde(default)]
    pub yaw: f64,
    pub height: f64,
    pub sensor: ModelId,
    /// Defaults to 30 m for VLP-16 and 50 m for VLP-32C.
    #[serde(default)]
    pub effective_range: Option<f64>,
    #[serde(default)]
    pub elevations_deg: Option<Vec<f64>>,
    #[serde(default)]
    pub azimuth_step_deg: Option<f64>,
    #[serde(default)]
    pub range_noise: Option<f64>,
    #[serde(default)]
    pub max_range: Option<f64>,
    /// Reported horizontal standard deviation; defaults per model.
    #[serde(default)]
    pub sigma_xy: Option<f64>,
}

impl RsuConfig {
    pub fn mount(&self) -> MountPose {
        MountPose {
            pose: Pose2D::new(self.x, self.y, self.yaw),
            height: self.height,
        }
    }

    pub fn position(&self) -> Point2 {
        Point2::new(self.x, self.y)
    }

    pub fn label(&self, index: usize) -> String {
        self.name.clone().unwrap_or_else(|| format!("rsu{index}"))
    }

    pub fn effective_range(&self) -> Option<f64> {
        self.effective_range
            .or_else(|| self.sensor.default_effective_range())
    }

    pub fn sigma_xy(&self) -> Option<f64> {
        self.sigma_xy.or(match self.sensor {
            ModelId::Vlp16 => Some(RSU_SIGMA_VLP16),
            ModelId::Vlp32c => Some(RSU_SIGMA_VLP32C),
            ModelId::Custom => None,
        })
    }

    pub fn sensor_model(&self) -> Result<SensorModel> {
        let mut m = match (&self.elevations_deg, self.sensor) {
            (Some(e), _) => {
                let text = e.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("\n");
                let mut m = SensorModel::custom(scan::parse_beam_table(&text)?)?;
                m.model_id = self.sensor;
                m
            }
            (None, id) => SensorModel::for_model(id)?,
        };
        if let Some(a) = self.azimuth_step_deg {
            m.azimuth_step = a.to_radians();
        }
        if let Some(n) = self.range_noise {
            m.range_noise_sigma = n;
        }
        if let Some(r) = self.max_range {
            m.max_range = r;
        }
        m.validate()?;
        Ok(m)
    }

    /// Switches the sensor model and clears model-specific overrides.
    pub fn set_model(&mut self, model: ModelId) {
        self.sensor = model;
        self.effective_range = None;
        self.sigma_xy = None;
        self.elevations_deg = None;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZoneConfig {
    pub start: f64,
    pub end: f64,
    pub multiplier: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NdtProfile {
    pub base_sigma_xy: f64,
    pub base_sigma_yaw: f64,
    /// Width of the linear ramp centered on each zone edge, meters.
    #[serde(default = "default_blend")]
    pub blend: f64,
    /// Time constant of the noise autocorrelation, seconds; zero for white
    /// noise.
    #[serde(default)]
    pub correlation_time: f64,
    #[serde(default)]
    pub zones: Vec<ZoneConfig>,
}

fn default_blend() -> f64 {
    5.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxConfig {
    pub min: [f64; 3],
    pub max: [f64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerceptionConfig {
    pub match_threshold: f64,
    pub roi_radius: f64,
    pub height_cutoff: f64,
    pub point_cap: usize,
    pub angle_step_deg: f64,
}

impl Default for PerceptionConfig {
    fn default() -> Self {
        let p = PerceptionParams::default();
        Self {
            match_threshold: p.match_threshold,
            roi_radius: p.roi_radius,
            height_cutoff: p.height_cutoff,
            point_cap: p.point_cap,
            angle_step_deg: p.angle_step.to_degrees(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub road: RoadConfig,
    pub vehicle: VehicleConfig,
    #[serde(default)]
    pub rsus: Vec<RsuConfig>,
    #[serde(default)]
    pub static_boxes: Vec<BoxConfig>,
    pub ndt: NdtProfile,
    #[serde(default)]
    pub channel: ChannelConfig,
    #[serde(default)]
    pub ekf: EkfConfig,
    #[serde(default)]
    pub perception: PerceptionConfig,
    /// Seconds; defaults to the time needed to reach the end of the road.
    #[serde(default)]
    pub duration: Option<f64>,
    #[serde(default)]
    pub ground_z: f64,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_trials")]
    pub trial_count: usize,
}

fn default_trials() -> usize {
    10
}

fn check(cond: bool, path: &str, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::config(path, msg))
    }
}

impl ScenarioConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig = toml::from_str(text).map_err(|e| {
            let span = e
                .span()
                .map(|s| format!("bytes {}..{}", s.start, s.end))
                .unwrap_or_else(|| "document".into());
            Error::config(span, e.message().to_string())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Straight 250 m road at 8 m/s with one roadside unit near the middle,
    /// inside a stretch where onboard localization degrades.
    pub fn default_scenario(model: ModelId) -> Self {
        ScenarioConfig {
            road: RoadConfig {
                points: Road::straight(250.0),
                speed: 8.0,
            },
            vehicle: VehicleConfig {
                id: "ego".into(),
                length: 4.5,
                width: 1.8,
                height: 1.5,
                start_offset: 0.0,
                mirrors: false,
            },
            rsus: vec![RsuConfig {
                name: Some("rsu0".into()),
                x: 125.0,
                y: DEFAULT_RSU_OFFSET,
                yaw: 0.0,
                height: 2.0,
                sensor: model,
                effective_range: None,
                elevations_deg: None,
                azimuth_step_deg: None,
                range_noise: Some(DEFAULT_SCENARIO_RANGE_NOISE),
                max_range: None,
                sigma_xy: None,
            }],
            static_boxes: vec![
                BoxConfig {
                    min: [100.0, 14.0, 0.0],
                    max: [116.0, 22.0, 9.0],
                },
                BoxConfig {
                    min: [139.8, 8.3, 0.0],
                    max: [140.2, 8.7, 4.5],
                },
                BoxConfig {
                    min: [40.0, -12.5, 0.0],
                    max: [210.0, -12.0, 2.5],
                },
            ],
            ndt: NdtProfile {
                base_sigma_xy: 0.03,
                base_sigma_yaw: 0.002,
                blend: 5.0,
                correlation_time: 2.0,
                zones: vec![ZoneConfig {
                    start: 65.0,
                    end: 185.0,
                    multiplier: 3.5,
                }],
            },
            channel: ChannelConfig::default(),
            ekf: EkfConfig::default(),
            perception: PerceptionConfig::default(),
            duration: None,
            ground_z: 0.0,
            master_seed: 1,
            trial_count: 10,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check(
            self.road.speed > 0.0 && self.road.speed.is_finite(),
            "road.speed",
            "must be positive",
        )?;
        let len = self.road.points.length();
        self.vehicle.spec()?;
        check(
            (0.0..len).contains(&self.vehicle.start_offset),
            "vehicle.start_offset",
            "must lie on the road",
        )?;
        for (i, r) in self.rsus.iter().enumerate() {
            let p = |f: &str| format!("rsus[{i}].{f}");
            check(r.height > 0.0, &p("height"), "must be positive")?;
            check(
                r.x.is_finite() && r.y.is_finite() && r.yaw.is_finite(),
                &p("x"),
                "pose must be finite",
            )?;
            match r.effective_range() {
                Some(v) => check(v > 0.0, &p("effective_range"), "must be positive")?,
                None => return Err(Error::config(p("effective_range"), "required for custom sensors")),
            }
            match r.sigma_xy() {
                Some(v) => check(v > 0.0 && v.is_finite(), &p("sigma_xy"), "must be positive")?,
                None => return Err(Error::config(p("sigma_xy"), "required for custom sensors")),
            }
            if r.sensor == ModelId::Custom && r.elevations_deg.is_none() {
                return Err(Error::config(p("elevations_deg"), "required for custom sensors"));
            }
            r.sensor_model()
                .map_err(|e| Error::config(p("sensor"), e.to_string()))?;
        }
        for (i, b) in self.static_boxes.iter().enumerate() {
            check(
                (0..3).all(|k| b.max[k] > b.min[k]),
                &format!("static_boxes[{i}]"),
                "extents must be positive",
            )?;
        }
        check(self.ndt.base_sigma_xy >= 0.0, "ndt.base_sigma_xy", "must be >= 0")?;
        check(self.ndt.base_sigma_yaw >= 0.0, "ndt.base_sigma_yaw", "must be >= 0")?;
        check(self.ndt.blend >= 0.0, "ndt.blend", "must be >= 0")?;
        check(
            self.ndt.correlation_time >= 0.0 && self.ndt.correlation_time.is_finite(),
            "ndt.correlation_time",
            "must be >= 0",
        )?;
        for (i, z) in self.ndt.zones.iter().enumerate() {
            let p = |f: &str| format!("ndt.zones[{i}].{f}");
            check(z.start >= 0.0 && z.start < z.end, &p("start"), "need 0 <= start < end")?;
            check(z.end <= len, &p("end"), "zone extends past the road")?;
            check(z.multiplier > 0.0, &p("multiplier"), "must be positive")?;
        }
        self.channel.validate()?;
        self.ekf.validate()?;
        let pc = &self.perception;
        check(pc.match_threshold > 0.0, "perception.match_threshold", "must be positive")?;
        check(pc.roi_radius > 0.0, "perception.roi_radius", "must be positive")?;
        check(pc.height_cutoff > 0.0, "perception.height_cutoff", "must be positive")?;
        check(pc.point_cap >= 3, "perception.point_cap", "must be >= 3")?;
        check(
            pc.angle_step_deg > 0.0 && pc.angle_step_deg < 90.0,
            "perception.angle_step_deg",
            "must lie in (0, 90)",
        )?;
        if let Some(d) = self.duration {
            check(d > 0.0 && d.is_finite(), "duration", "must be positive")?;
        }
        check(self.trial_count >= 1, "trial_count", "must be >= 1")?;
        Ok(())
    }

    pub fn duration(&self) -> f64 {
        self.duration.unwrap_or_else(|| {
            (self.road.points.length() - self.vehicle.start_offset) / self.road.speed
        })
    }

    pub fn scene(&self) -> BackgroundScene {
        BackgroundScene {
            static_boxes: self
                .static_boxes
                .iter()
                .map(|b| {
                    Aabb::new(
                        Point3::new(b.min[0], b.min[1], b.min[2]),
                        Point3::new(b.max[0], b.max[1], b.max[2]),
                    )
                })
                .collect(),
        }
    }

    pub fn perception_params(&self) -> PerceptionParams {
        let p = &self.perception;
        PerceptionParams {
            match_threshold: p.match_threshold,
            roi_radius: p.roi_radius,
            height_cutoff: p.height_cutoff,
            point_cap: p.point_cap,
            angle_step: p.angle_step_deg.to_radians(),
            ground_z: self.ground_z,
        }
    }

    pub fn without_rsus(&self) -> Self {
        Self {
            rsus: Vec::new(),
            ..self.clone()
        }
    }

    pub fn with_sensor(&self, model: ModelId) -> Self {
        let mut c = self.clone();
        for r in &mut c.rsus {
            r.set_model(model);
        }
        c
    }

    pub fn with_channel(&self, delay: f64, loss_prob: f64) -> Self {
        let mut c = self.clone();
        c.channel.delay = delay;
        c.channel.loss_prob = loss_prob;
        c
    }
}

/// Lateral distance between the road centerline and the default RSU. Closer
/// than about 5 m, the lowest VLP-16 beam passes over the lower body of a
/// vehicle driving right past the pole, and the silhouette loses its ends.
pub const DEFAULT_RSU_OFFSET: f64 = 6.0;

/// Range noise of the default RSU. The fitted box edges sit at extreme
/// projections, so range noise biases them outward by roughly twice its
/// sigma.
pub const DEFAULT_SCENARIO_RANGE_NOISE: f64 = 0.01;
