//! Fixed-step closed simulation loop for one trial.

use super::config::ScenarioConfig;
use super::ndt::NdtSurrogate;
use crate::channel::Channel;
use crate::ekf::{EkfState, Filter};
use crate::error::Result;
use crate::geometry::Pose2D;
use crate::measurement::PoseMeasurement;
use crate::perception::{build_background_index, estimate_vehicle_pose, FrameHint, RsuContext};
use crate::rng;
use crate::scan::{generate_scan, BackgroundScene, SensorModel, VehicleBoxState};

/// Rate of both the onboard localizer and the roadside pipeline.
pub const MEASUREMENT_RATE: f64 = 10.0;

/// Initial standard deviations for `[x, y, yaw, v, omega]`.
const INITIAL_STDS: [f64; 5] = [0.1, 0.1, 0.05, 10.0, 0.5];

/// A roadside estimate as it leaves or reaches the vehicle.
#[derive(Debug, Clone, PartialEq)]
pub struct RsuEvent {
    pub rsu: usize,
    pub pose: Pose2D,
    /// Sensing time.
    pub stamp: f64,
    pub lfa_points: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Diagnostics {
    /// Scans taken this tick.
    pub scans: u32,
    /// Scans for which the pipeline returned nothing.
    pub misses: u32,
    /// Messages lost in the channel so far.
    pub dropped: u64,
    /// Measurements the filter refused as too old, so far.
    pub rejected: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TickRecord {
    pub t: f64,
    /// Arc length of the true vehicle position.
    pub arc: f64,
    pub truth: Pose2D,
    pub ndt: Option<Pose2D>,
    /// Estimates produced by roadside units this tick.
    pub rsu_produced: Vec<RsuEvent>,
    /// Estimates delivered to the vehicle this tick.
    pub rsu_delivered: Vec<RsuEvent>,
    pub fused: Pose2D,
    /// Fused longitudinal speed, m/s.
    pub fused_speed: f64,
    /// True when the vehicle center is within some unit's effective range.
    pub in_coverage: bool,
    pub diag: Diagnostics,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrajectoryLog {
    pub seed: u64,
    pub records: Vec<TickRecord>,
}

struct Rsu {
    ctx: RsuContext,
    sensor: SensorModel,
    frame_id: String,
}

#[derive(Debug, Clone)]
struct InFlight {
    rsu: usize,
    lfa_points: usize,
    meas: PoseMeasurement,
}

fn build_rsus(cfg: &ScenarioConfig, scene: &BackgroundScene, seed: u64) -> Result<Vec<Rsu>> {
    let spec = cfg.vehicle.spec()?;
    let params = cfg.perception_params();
    cfg.rsus
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let sensor = r.sensor_model()?;
            let mount = r.mount();
            let frame_id = r.label(i);
            let mut rr = rng::stream(seed, "reference", i as u64);
            let reference = generate_scan(&sensor, &mount, scene, None, 0.0, &frame_id, &mut rr);
            Ok(Rsu {
                ctx: RsuContext {
                    index: build_background_index(&reference)?,
                    mount,
                    vehicle: spec.clone(),
                    effective_range: r.effective_range().expect("validated"),
                    sigma_xy: r.sigma_xy().expect("validated"),
                    params,
                },
                sensor,
                frame_id,
            })
        })
        .collect()
}

/// Runs one trial. Every random draw comes from a stream derived from
/// `trial_seed` and the subsystem name, so the truth, the onboard noise and
/// the channel never influence one another's draws.
pub fn run_scenario(cfg: &ScenarioConfig, trial_seed: u64) -> Result<TrajectoryLog> {
    cfg.validate()?;
    let road = &cfg.road.points;
    let scene = cfg.scene();
    let spec = cfg.vehicle.spec()?;
    let rsus = build_rsus(cfg, &scene, trial_seed)?;

    let dt = cfg.ekf.dt();
    let ticks = (cfg.duration() / dt + 1e-9).floor() as u64;
    let every = (cfg.ekf.predict_rate / MEASUREMENT_RATE).round().max(1.0) as u64;

    let mut ndt_rng = rng::stream(trial_seed, "ndt", 0);
    let mut ndt_source = NdtSurrogate::new(cfg.ndt.clone());
    let mut channel: Channel<InFlight> =
        Channel::new(cfg.channel, rng::stream(trial_seed, "channel", cfg.channel.seed));
    let mut scan_rngs: Vec<_> = (0..rsus.len())
        .map(|i| rng::stream(trial_seed, "scan", i as u64))
        .collect();

    let mut filter: Option<Filter> = None;
    let mut records = Vec::with_capacity(ticks as usize + 1);

    for k in 0..=ticks {
        let t = k as f64 * dt;
        let arc = (cfg.vehicle.start_offset + cfg.road.speed * t).min(road.length());
        let truth = road.pose_at(arc);
        if let Some(f) = filter.as_mut() {
            f.advance_to(t)?;
        }
        let measuring = k % every == 0;

        let mut diag = Diagnostics::default();
        let mut produced = Vec::new();
        let in_coverage = rsus
            .iter()
            .any(|r| r.ctx.mount.pose.planar_distance(&truth) <= r.ctx.effective_range);

        if let (true, Some(f)) = (measuring, filter.as_ref()) {
            let est = f.state().pose();
            let hint = FrameHint {
                ref_position: Some(est),
                prior_heading: Some(est.yaw),
            };
            let vehicle = VehicleBoxState::new(truth, spec.clone());
            let vehicle = if cfg.vehicle.mirrors {
                vehicle.with_mirrors()
            } else {
                vehicle
            };
            for (i, r) in rsus.iter().enumerate() {
                if r.ctx.mount.pose.planar_distance(&truth) > r.ctx.effective_range {
                    continue;
                }
                diag.scans += 1;
                let frame = generate_scan(
                    &r.sensor,
                    &r.ctx.mount,
                    &scene,
                    Some(&vehicle),
                    t,
                    &r.frame_id,
                    &mut scan_rngs[i],
                );
                match estimate_vehicle_pose(&frame, &r.ctx, &hint) {
                    Some(m) => {
                        produced.push(RsuEvent {
                            rsu: i,
                            pose: m.measurement.pose,
                            stamp: t,
                            lfa_points: m.lfa_point_count,
                        });
                        channel.send(
                            InFlight {
                                rsu: i,
                                lfa_points: m.lfa_point_count,
                                meas: m.measurement,
                            },
                            t,
                        );
                    }
                    None => diag.misses += 1,
                }
            }
        }

        let delivered = channel.drain(t);
        let ndt = measuring.then(|| ndt_source.measure(&truth, arc, t, &mut ndt_rng));

        let f = match filter.as_mut() {
            Some(f) => f,
            None => {
                let first = ndt.as_ref().expect("tick 0 always measures");
                let init = EkfState::from_pose(t, &first.pose, 0.0, INITIAL_STDS);
                filter.insert(Filter::new(cfg.ekf, init))
            }
        };
        let mut rsu_delivered = Vec::with_capacity(delivered.len());
        for d in delivered {
            rsu_delivered.push(RsuEvent {
                rsu: d.rsu,
                pose: d.meas.pose,
                stamp: d.meas.stamp,
                lfa_points: d.lfa_points,
            });
            f.submit(d.meas);
        }
        if let Some(m) = &ndt {
            if k > 0 {
                f.submit(m.clone());
            }
        }
        f.apply_pending()?;
        diag.dropped = channel.dropped();
        diag.rejected = f.rejected();

        records.push(TickRecord {
            t,
            arc,
            truth,
            ndt: ndt.map(|m| m.pose),
            rsu_produced: produced,
            rsu_delivered,
            fused: f.state().pose(),
            fused_speed: f.state().mean[crate::ekf::model::IV],
            in_coverage,
            diag,
        });
    }
    Ok(TrajectoryLog {
        seed: trial_seed,
        records,
    })
}
