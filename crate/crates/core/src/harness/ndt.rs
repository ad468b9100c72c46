//! Noise surrogate for onboard scan-matching localization.

use rand::Rng;
use rand_distr::StandardNormal;

use super::config::NdtProfile;
use crate::covariance::CovarianceSpec;
use crate::geometry::Pose2D;
use crate::measurement::{PoseMeasurement, Source};

/// Noise multiplier at arc length `s`. Each zone edge is a linear ramp of
/// width `blend` centered on the edge; overlapping zones take the largest
/// multiplier.
pub fn zone_multiplier(profile: &NdtProfile, s: f64) -> f64 {
    let half = profile.blend / 2.0;
    let mut m: f64 = 1.0;
    for z in &profile.zones {
        let w = if half > 0.0 {
            let rise = ((s - (z.start - half)) / profile.blend).clamp(0.0, 1.0);
            let fall = (((z.end + half) - s) / profile.blend).clamp(0.0, 1.0);
            rise.min(fall)
        } else if s >= z.start && s < z.end {
            1.0
        } else {
            0.0
        };
        m = m.max(1.0 + w * (z.multiplier - 1.0));
    }
    m
}

/// Stateful surrogate whose unit noise follows a first-order autoregressive
/// process with time constant `profile.correlation_time`, then scaled by the
/// zone-dependent sigma. Each output is marginally Gaussian with the same
/// sigma as the white surrogate; with a zero time constant the two coincide.
#[derive(Debug, Clone)]
pub struct NdtSurrogate {
    profile: NdtProfile,
    unit: Option<(f64, [f64; 3])>,
}

impl NdtSurrogate {
    pub fn new(profile: NdtProfile) -> Self {
        Self {
            profile,
            unit: None,
        }
    }

    pub fn measure<R: Rng + ?Sized>(
        &mut self,
        truth: &Pose2D,
        arc_length: f64,
        stamp: f64,
        rng: &mut R,
    ) -> PoseMeasurement {
        let fresh: [f64; 3] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let tau = self.profile.correlation_time;
        let unit = match self.unit {
            Some((t0, prev)) if tau > 0.0 => {
                let rho = (-(stamp - t0).abs() / tau).exp();
                let k = (1.0 - rho * rho).sqrt();
                [0, 1, 2].map(|i| rho * prev[i] + k * fresh[i])
            }
            _ => fresh,
        };
        self.unit = Some((stamp, unit));
        perturb(truth, arc_length, &self.profile, stamp, unit)
    }
}

fn perturb(truth: &Pose2D, arc_length: f64, profile: &NdtProfile, stamp: f64, n: [f64; 3]) -> PoseMeasurement {
    let m = zone_multiplier(profile, arc_length);
    let sxy = profile.base_sigma_xy * m;
    let syaw = profile.base_sigma_yaw * m;
    let pose = Pose2D::new(
        truth.x + sxy * n[0],
        truth.y + sxy * n[1],
        truth.yaw + syaw * n[2],
    );
    PoseMeasurement::new(pose, CovarianceSpec::ndt(), stamp, Source::Ndt)
        .expect("stamp from the simulation clock is non-negative")
}

/// Truth plus zone-scaled white Gaussian noise. The reported covariance is always
/// the nominal one, whatever the actual noise level. Three normals are drawn
/// per call so the stream position never depends on the profile.
pub fn ndt_surrogate<R: Rng + ?Sized>(
    truth: &Pose2D,
    arc_length: f64,
    profile: &NdtProfile,
    stamp: f64,
    rng: &mut R,
) -> PoseMeasurement {
    let n = [
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
        rng.sample(StandardNormal),
    ];
    perturb(truth, arc_length, profile, stamp, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::ZoneConfig;
    use crate::rng;

    fn profile(base: f64, m: f64) -> NdtProfile {
        NdtProfile {
            base_sigma_xy: base,
            base_sigma_yaw: base / 10.0,
            blend: 5.0,
            correlation_time: 0.0,
            zones: vec![ZoneConfig {
                start: 50.0,
                end: 150.0,
                multiplier: m,
            }],
        }
    }

    #[test]
    fn zero_noise_is_truth() {
        let p = profile(0.0, 1.0);
        let truth = Pose2D::new(3.0, -2.0, 0.4);
        let mut r = rng::stream(5, "ndt", 0);
        let m = ndt_surrogate(&truth, 10.0, &p, 0.1, &mut r);
        assert_eq!(m.pose, truth);
        assert_eq!(m.cov, CovarianceSpec::ndt());
        assert_eq!(m.source, Source::Ndt);
    }

    #[test]
    fn multiplier_profile() {
        let p = profile(0.03, 3.5);
        assert_eq!(zone_multiplier(&p, 0.0), 1.0);
        assert_eq!(zone_multiplier(&p, 47.5), 1.0);
        assert_eq!(zone_multiplier(&p, 50.0), 2.25);
        assert_eq!(zone_multiplier(&p, 52.5), 3.5);
        assert_eq!(zone_multiplier(&p, 100.0), 3.5);
        assert_eq!(zone_multiplier(&p, 150.0), 2.25);
        assert_eq!(zone_multiplier(&p, 152.5), 1.0);
        let mut q = p.clone();
        q.blend = 0.0;
        assert_eq!(zone_multiplier(&q, 49.999), 1.0);
        assert_eq!(zone_multiplier(&q, 50.0), 3.5);
        assert_eq!(zone_multiplier(&q, 150.0), 1.0);
    }

    #[test]
    fn reported_covariance_ignores_zone() {
        let p = profile(0.03, 3.5);
        let mut r = rng::stream(5, "ndt", 0);
        let a = ndt_surrogate(&Pose2D::identity(), 10.0, &p, 0.0, &mut r);
        let b = ndt_surrogate(&Pose2D::identity(), 100.0, &p, 0.0, &mut r);
        assert_eq!(a.cov, b.cov);
    }
}
