//! Binned error statistics comparing a fused run with its baseline.

use super::config::ScenarioConfig;
use super::sim::TrajectoryLog;
use crate::error::{Error, Result};

pub const BIN_WIDTH: f64 = 2.0;
/// Resolution used to locate coverage interval endpoints on the road.
pub const COVERAGE_STEP: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bin {
    pub start: f64,
    pub end: f64,
    /// Minimum planar error among samples in the bin, if any.
    pub baseline: Option<f64>,
    pub fused: Option<f64>,
}

impl Bin {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.start + self.end)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionReport {
    pub name: String,
    /// Arc-length interval, `None` for the complement of all coverage.
    pub interval: Option<(f64, f64)>,
    pub bins: usize,
    pub mle_baseline: f64,
    pub mle_fused: f64,
}

impl RegionReport {
    /// `1 - fused / baseline`.
    pub fn improvement(&self) -> f64 {
        1.0 - self.mle_fused / self.mle_baseline
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub bins: Vec<Bin>,
    /// One entry per roadside unit, in configuration order.
    pub coverage: Vec<RegionReport>,
    pub outside: RegionReport,
}

fn planar_error(a: &crate::geometry::Pose2D, b: &crate::geometry::Pose2D) -> f64 {
    (a.x - b.x).hypot(a.y - b.y)
}

fn min_into(slot: &mut Option<f64>, v: f64) {
    *slot = Some(slot.map_or(v, |m| m.min(v)));
}

fn mean(v: impl Iterator<Item = f64>) -> f64 {
    let (s, n) = v.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 {
        f64::NAN
    } else {
        s / n as f64
    }
}

fn region(name: String, interval: Option<(f64, f64)>, bins: &[&Bin]) -> RegionReport {
    let used: Vec<_> = bins
        .iter()
        .filter(|b| b.baseline.is_some() && b.fused.is_some())
        .collect();
    RegionReport {
        name,
        interval,
        bins: used.len(),
        mle_baseline: mean(used.iter().map(|b| b.baseline.unwrap())),
        mle_fused: mean(used.iter().map(|b| b.fused.unwrap())),
    }
}

/// Coverage interval of every roadside unit, measured from the unit to the
/// vehicle center.
pub fn coverage_intervals(cfg: &ScenarioConfig) -> Vec<Option<(f64, f64)>> {
    cfg.rsus
        .iter()
        .map(|r| {
            let range = r.effective_range().unwrap_or(0.0);
            cfg.road.points.coverage_interval(r.position(), range, COVERAGE_STEP)
        })
        .collect()
}

/// Bins both runs by true arc length, takes the minimum error per bin and
/// averages the minima inside each coverage interval and outside all of
/// them. A bin belongs to an interval when its midpoint does.
pub fn compute_metrics(
    baseline: &TrajectoryLog,
    fused: &TrajectoryLog,
    cfg: &ScenarioConfig,
) -> Result<MetricsReport> {
    if baseline.records.len() != fused.records.len() {
        return Err(Error::Mismatch(format!(
            "baseline has {} records, fused has {}",
            baseline.records.len(),
            fused.records.len()
        )));
    }
    let len = cfg.road.points.length();
    let n = ((len / BIN_WIDTH).ceil() as usize).max(1);
    let mut bins: Vec<Bin> = (0..n)
        .map(|i| Bin {
            start: i as f64 * BIN_WIDTH,
            end: ((i + 1) as f64 * BIN_WIDTH).min(len),
            baseline: None,
            fused: None,
        })
        .collect();

    for (i, (b, f)) in baseline.records.iter().zip(&fused.records).enumerate() {
        if b.truth != f.truth || b.arc != f.arc || b.t != f.t {
            return Err(Error::Mismatch(format!("truth tracks differ at record {i}")));
        }
        let idx = ((b.arc / BIN_WIDTH).floor() as usize).min(n - 1);
        min_into(&mut bins[idx].baseline, planar_error(&b.fused, &b.truth));
        min_into(&mut bins[idx].fused, planar_error(&f.fused, &f.truth));
    }

    let intervals = coverage_intervals(cfg);
    let inside = |b: &Bin, iv: &Option<(f64, f64)>| {
        iv.is_some_and(|(lo, hi)| b.midpoint() >= lo && b.midpoint() <= hi)
    };
    let coverage = intervals
        .iter()
        .enumerate()
        .map(|(i, iv)| {
            let members: Vec<&Bin> = bins.iter().filter(|b| inside(b, iv)).collect();
            region(cfg.rsus[i].label(i), *iv, &members)
        })
        .collect();
    let rest: Vec<&Bin> = bins
        .iter()
        .filter(|b| !intervals.iter().any(|iv| inside(b, iv)))
        .collect();
    let outside = region("outside".into(), None, &rest);
    Ok(MetricsReport {
        bins,
        coverage,
        outside,
    })
}
