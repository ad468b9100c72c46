//! V2I channel with constant delay and i.i.d. Bernoulli loss.
//!
//! Each send consumes exactly one uniform draw, dropped or not, so two
//! configurations sharing a seed see the same loss pattern up to the
//! threshold.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{self, SimRng};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelConfig {
    /// Seconds.
    pub delay: f64,
    pub loss_prob: f64,
    #[serde(default)]
    pub seed: u64,
}

impl Default for ChannelConfig {
    fn default() -> Self {
        Self {
            delay: 0.0,
            loss_prob: 0.0,
            seed: 0,
        }
    }
}

impl ChannelConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.delay >= 0.0 && self.delay.is_finite()) {
            return Err(Error::config("channel.delay", "must be finite and >= 0"));
        }
        if !(0.0..=1.0).contains(&self.loss_prob) {
            return Err(Error::config("channel.loss_prob", "must lie in [0, 1]"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelEvent<T> {
    pub payload: T,
    pub send_time: f64,
    pub deliver_time: f64,
}

/// One transmission attempt. `None` means the packet was lost.
pub fn send<T, R: Rng + ?Sized>(
    cfg: &ChannelConfig,
    msg: T,
    now: f64,
    rng: &mut R,
) -> Option<ChannelEvent<T>> {
    debug_assert!(now >= 0.0);
    let u: f64 = rng.random();
    if u < cfg.loss_prob {
        return None;
    }
    Some(ChannelEvent {
        payload: msg,
        send_time: now,
        deliver_time: now + cfg.delay,
    })
}

/// Removes and returns every payload due by `now`, ordered by delivery time
/// and then by position in the queue (send order).
pub fn drain<T>(queue: &mut Vec<ChannelEvent<T>>, now: f64) -> Vec<T> {
    let (mut due, rest): (Vec<_>, Vec<_>) =
        std::mem::take(queue).into_iter().partition(|e| e.deliver_time <= now);
    *queue = rest;
    due.sort_by(|a, b| a.deliver_time.total_cmp(&b.deliver_time));
    due.into_iter().map(|e| e.payload).collect()
}

/// A single-owner channel: configuration, random stream and in-flight queue.
#[derive(Debug, Clone)]
pub struct Channel<T> {
    cfg: ChannelConfig,
    rng: SimRng,
    queue: Vec<ChannelEvent<T>>,
    sent: u64,
    dropped: u64,
}

impl<T> Channel<T> {
    pub fn new(cfg: ChannelConfig, rng: SimRng) -> Self {
        Self {
            cfg,
            rng,
            queue: Vec::new(),
            sent: 0,
            dropped: 0,
        }
    }

    /// Channel whose stream is derived from `cfg.seed`.
    pub fn from_config(cfg: ChannelConfig) -> Self {
        Self::new(cfg, rng::stream(cfg.seed, "channel", 0))
    }

    pub fn config(&self) -> &ChannelConfig {
        &self.cfg
    }

    pub fn send(&mut self, msg: T, now: f64) -> bool {
        self.sent += 1;
        match send(&self.cfg, msg, now, &mut self.rng) {
            Some(ev) => {
                self.queue.push(ev);
                true
            }
            None => {
                self.dropped += 1;
                false
            }
        }
    }

    pub fn drain(&mut self, now: f64) -> Vec<T> {
        drain(&mut self.queue, now)
    }

    pub fn in_flight(&self) -> usize {
        self.queue.len()
    }

    pub fn sent(&self) -> u64 {
        self.sent
    }

    pub fn dropped(&self) -> u64 {
        self.dropped
    }
}
