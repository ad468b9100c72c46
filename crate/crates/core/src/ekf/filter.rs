//! Stateful filter with time-delay compensation and smooth updates.
//!
//! Every predict tick leaves a snapshot `(t, prior, corrections, posterior)`
//! in a history buffer covering `history_horizon` seconds. A late
//! measurement is attached to the snapshot nearest its stamp and the chain
//! is replayed forward: each later prior is re-predicted from the previous
//! posterior and that snapshot's own corrections are re-applied in stamp
//! order.
//!
//! Smoothing queues a measurement and applies it as `smooth_steps` partial
//! corrections on consecutive ticks, each with its variance multiplied by
//! `smooth_steps`. All partials attach to the same historical snapshot, so
//! once the last one lands the result equals a single full correction.

use std::collections::VecDeque;

use super::model::{predict, EkfConfig, EkfState};
use super::update::update_scaled;
use crate::error::{Error, Result};
use crate::measurement::PoseMeasurement;

#[derive(Debug, Clone)]
struct Correction {
    meas: PoseMeasurement,
    var_scale: f64,
    seq: u64,
}

#[derive(Debug, Clone)]
struct Snapshot {
    t: f64,
    prior: EkfState,
    corrections: Vec<Correction>,
    posterior: EkfState,
}

#[derive(Debug, Clone)]
struct SmoothJob {
    meas: PoseMeasurement,
    remaining: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DelayOutcome {
    Applied,
    /// The stamp lies beyond the history horizon; the state is untouched.
    Rejected,
}

#[derive(Debug, Clone)]
pub struct Filter {
    cfg: EkfConfig,
    history: VecDeque<Snapshot>,
    jobs: Vec<SmoothJob>,
    seq: u64,
    rejected: u64,
}

impl Filter {
    pub fn new(cfg: EkfConfig, initial: EkfState) -> Self {
        let snap = Snapshot {
            t: initial.t,
            prior: initial.clone(),
            corrections: Vec::new(),
            posterior: initial,
        };
        Self {
            cfg,
            history: VecDeque::from([snap]),
            jobs: Vec::new(),
            seq: 0,
            rejected: 0,
        }
    }

    pub fn config(&self) -> &EkfConfig {
        &self.cfg
    }

    pub fn state(&self) -> &EkfState {
        &self.latest().posterior
    }

    pub fn now(&self) -> f64 {
        self.latest().t
    }

    pub fn rejected(&self) -> u64 {
        self.rejected
    }

    pub fn pending_jobs(&self) -> usize {
        self.jobs.len()
    }

    fn latest(&self) -> &Snapshot {
        self.history.back().expect("history never empty")
    }

    /// Predicts forward to `t` and records a new snapshot.
    pub fn advance_to(&mut self, t: f64) -> Result<()> {
        let last = self.latest();
        let dt = t - last.t;
        if dt.is_nan() || dt <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "cannot advance from {} to {t}",
                last.t
            )));
        }
        let mut prior = predict(&last.posterior, dt, &self.cfg);
        prior.t = t;
        self.history.push_back(Snapshot {
            t,
            posterior: prior.clone(),
            prior,
            corrections: Vec::new(),
        });
        let keep_from = t - self.cfg.history_horizon - self.cfg.dt();
        while self.history.len() > 1 && self.history[0].t < keep_from {
            self.history.pop_front();
        }
        Ok(())
    }

    /// Plain correction at the current time.
    pub fn update(&mut self, meas: &PoseMeasurement) -> Result<()> {
        let snap = self.history.back_mut().expect("history never empty");
        snap.posterior = update_scaled(&snap.posterior, meas, 1.0)?;
        Ok(())
    }

    /// Applies `meas` at its own stamp and replays forward to now.
    pub fn update_delayed(&mut self, meas: &PoseMeasurement) -> Result<DelayOutcome> {
        self.insert_correction(meas, 1.0)
    }

    fn insert_correction(&mut self, meas: &PoseMeasurement, var_scale: f64) -> Result<DelayOutcome> {
        let now = self.now();
        if now - meas.stamp > self.cfg.history_horizon + 1e-9 {
            self.rejected += 1;
            return Ok(DelayOutcome::Rejected);
        }
        let idx = self.nearest_snapshot(meas.stamp);
        self.seq += 1;
        let corr = Correction {
            meas: meas.clone(),
            var_scale,
            seq: self.seq,
        };

        let snap = &mut self.history[idx];
        let pos = snap
            .corrections
            .partition_point(|c| (c.meas.stamp, c.seq) <= (corr.meas.stamp, corr.seq));
        if pos == snap.corrections.len() {
            snap.posterior = update_scaled(&snap.posterior, &corr.meas, corr.var_scale)?;
            snap.corrections.push(corr);
        } else {
            snap.corrections.insert(pos, corr);
            snap.posterior = apply_all(&snap.prior, &snap.corrections)?;
        }
        self.replay_from(idx + 1)?;
        Ok(DelayOutcome::Applied)
    }

    fn nearest_snapshot(&self, stamp: f64) -> usize {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (i, s) in self.history.iter().enumerate() {
            let d = (s.t - stamp).abs();
            if d < best_d {
                best = i;
                best_d = d;
            }
        }
        best
    }

    fn replay_from(&mut self, start: usize) -> Result<()> {
        for i in start..self.history.len() {
            let prev_post = self.history[i - 1].posterior.clone();
            let snap = &mut self.history[i];
            let mut prior = predict(&prev_post, snap.t - prev_post.t, &self.cfg);
            prior.t = snap.t;
            snap.posterior = apply_all(&prior, &snap.corrections)?;
            snap.prior = prior;
        }
        Ok(())
    }

    /// Queues `meas` for smoothed application, starting with the next call
    /// to [`Filter::apply_pending`].
    pub fn submit(&mut self, meas: PoseMeasurement) {
        self.jobs.push(SmoothJob {
            meas,
            remaining: self.cfg.smooth_steps,
        });
    }

    /// Applies one partial correction for every queued measurement.
    pub fn apply_pending(&mut self) -> Result<()> {
        let k = self.cfg.smooth_steps as f64;
        let mut jobs = std::mem::take(&mut self.jobs);
        for job in jobs.iter_mut() {
            match self.insert_correction(&job.meas, k)? {
                DelayOutcome::Applied => job.remaining -= 1,
                DelayOutcome::Rejected => job.remaining = 0,
            }
        }
        jobs.retain(|j| j.remaining > 0);
        self.jobs = jobs;
        Ok(())
    }
}

fn apply_all(prior: &EkfState, corrections: &[Correction]) -> Result<EkfState> {
    corrections.iter().try_fold(prior.clone(), |s, c| {
        update_scaled(&s, &c.meas, c.var_scale)
    })
}
