//! Multi-trial runs and network-condition sweeps.

use std::path::Path;

use rayon::prelude::*;

use super::config::ScenarioConfig;
use super::metrics::{compute_metrics, MetricsReport};
use super::output;
use super::sim::run_scenario;
use crate::error::{Error, Result};
use crate::scan::ModelId;

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub seed: u64,
    pub metrics: MetricsReport,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stats {
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

impl Stats {
    pub fn of(values: &[f64]) -> Self {
        Self {
            mean: values.iter().sum::<f64>() / values.len() as f64,
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionAggregate {
    pub name: String,
    pub interval: Option<(f64, f64)>,
    pub baseline: Stats,
    pub fused: Stats,
}

impl RegionAggregate {
    /// Improvement of the mean fused MLE over the mean baseline MLE.
    pub fn improvement(&self) -> f64 {
        1.0 - self.fused.mean / self.baseline.mean
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub trials: Vec<TrialResult>,
    /// Coverage regions in unit order, then the outside region.
    pub aggregate: Vec<RegionAggregate>,
}

impl SuiteReport {
    pub fn coverage(&self, rsu: usize) -> &RegionAggregate {
        &self.aggregate[rsu]
    }

    pub fn outside(&self) -> &RegionAggregate {
        self.aggregate.last().expect("outside region always present")
    }
}

/// Runs one trial: the configured scenario and its onboard-only baseline
/// with the same seed. Writes per-trial artifacts when `out` is given.
pub fn run_trial(cfg: &ScenarioConfig, seed: u64, out: Option<&Path>) -> Result<TrialResult> {
    let baseline = run_scenario(&cfg.without_rsus(), seed)?;
    let fused = run_scenario(cfg, seed)?;
    let metrics = compute_metrics(&baseline, &fused, cfg)?;
    if let Some(dir) = out {
        output::write_trial(dir, &baseline, &fused, &metrics)?;
    }
    Ok(TrialResult { seed, metrics })
}

fn aggregate(trials: &[TrialResult]) -> Vec<RegionAggregate> {
    let first = &trials[0].metrics;
    let regions = first.coverage.len() + 1;
    (0..regions)
        .map(|k| {
            let pick = |m: &MetricsReport| {
                if k < m.coverage.len() {
                    m.coverage[k].clone()
                } else {
                    m.outside.clone()
                }
            };
            let rs: Vec<_> = trials.iter().map(|t| pick(&t.metrics)).collect();
            let b: Vec<f64> = rs.iter().map(|r| r.mle_baseline).collect();
            let f: Vec<f64> = rs.iter().map(|r| r.mle_fused).collect();
            RegionAggregate {
                name: rs[0].name.clone(),
                interval: rs[0].interval,
                baseline: Stats::of(&b),
                fused: Stats::of(&f),
            }
        })
        .collect()
}

/// Runs `trial_count` trials with seeds `master_seed + i` in parallel and
/// aggregates their MLEs. With `out`, writes `trial_NN/` directories and a
/// `summary.csv`; file contents do not depend on scheduling.
pub fn run_suite(cfg: &ScenarioConfig, trial_count: usize, out: Option<&Path>) -> Result<SuiteReport> {
    cfg.validate()?;
    let trial_count = trial_count.max(1);
    if let Some(dir) = out {
        output::create_dir(dir)?;
    }
    let trials = (0..trial_count)
        .into_par_iter()
        .map(|i| {
            let seed = cfg.master_seed.wrapping_add(i as u64);
            let dir = out.map(|d| d.join(format!("trial_{i:02}")));
            run_trial(cfg, seed, dir.as_deref())
        })
        .collect::<Result<Vec<_>>>()?;
    let report = SuiteReport {
        aggregate: aggregate(&trials),
        trials,
    };
    if let Some(dir) = out {
        output::write_summary(&dir.join("summary.csv"), &report)?;
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepCell {
    pub sensor: ModelId,
    /// Seconds.
    pub delay: f64,
    pub loss: f64,
    /// First coverage region of the suite.
    pub region: RegionAggregate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub cells: Vec<SweepCell>,
}

impl SweepReport {
    pub fn cell(&self, sensor: ModelId, delay: f64, loss: f64) -> Option<&SweepCell> {
        self.cells
            .iter()
            .find(|c| c.sensor == sensor && c.delay == delay && c.loss == loss)
    }

    /// Relative increase of the fused MLE over the ideal-network cell.
    pub fn degradation(&self, sensor: ModelId, delay: f64, loss: f64) -> Option<f64> {
        let ideal = self.cell(sensor, 0.0, 0.0)?.region.fused.mean;
        Some(self.cell(sensor, delay, loss)?.region.fused.mean / ideal - 1.0)
    }
}

/// Runs the suite over every (sensor, delay, loss) combination. Writes
/// `sweep.csv` when `out` is given.
pub fn run_sweep(
    cfg: &ScenarioConfig,
    sensors: &[ModelId],
    delays: &[f64],
    losses: &[f64],
    trial_count: usize,
    out: Option<&Path>,
) -> Result<SweepReport> {
    if cfg.rsus.is_empty() {
        return Err(Error::InvalidInput("a sweep needs at least one roadside unit".into()));
    }
    if delays.is_empty() || losses.is_empty() || sensors.is_empty() {
        return Err(Error::InvalidInput("empty sweep grid".into()));
    }
    let mut cells = Vec::new();
    for &sensor in sensors {
        for &delay in delays {
            for &loss in losses {
                let c = cfg.with_sensor(sensor).with_channel(delay, loss);
                let r = run_suite(&c, trial_count, None)?;
                cells.push(SweepCell {
                    sensor,
                    delay,
                    loss,
                    region: r.coverage(0).clone(),
                });
            }
        }
    }
    let report = SweepReport { cells };
    if let Some(dir) = out {
        output::create_dir(dir)?;
        output::write_sweep(&dir.join("sweep.csv"), &report, delays, losses)?;
    }
    Ok(report)
}
