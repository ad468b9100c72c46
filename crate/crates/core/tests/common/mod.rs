//! Brute-force reference implementations shared by the integration tests.
//! They are deliberately naive and written without reusing library code
//! beyond plain data types.

#![allow(dead_code)]

use rand::Rng;
use rsuloc::geometry::{Point2, Point3, Pose2D};
use rsuloc::scan::{Aabb, BackgroundScene, VehicleBoxState};

/// Ray against an axis-aligned box, one face plane at a time. Returns the
/// smallest positive distance at which the ray crosses a face.
pub fn box_by_faces(b: &Aabb, o: [f64; 3], d: [f64; 3]) -> Option<f64> {
    let lo = [b.min.x, b.min.y, b.min.z];
    let hi = [b.max.x, b.max.y, b.max.z];
    let eps = 1e-12;
    let mut best: Option<f64> = None;
    for axis in 0..3 {
        if d[axis] == 0.0 {
            continue;
        }
        for plane in [lo[axis], hi[axis]] {
            let t = (plane - o[axis]) / d[axis];
            if t <= 0.0 {
                continue;
            }
            let inside = (0..3).filter(|&k| k != axis).all(|k| {
                let c = o[k] + t * d[k];
                c >= lo[k] - eps && c <= hi[k] + eps
            });
            if inside && best.is_none_or(|b| t < b) {
                best = Some(t);
            }
        }
    }
    best
}

/// Nearest hit of a unit ray against ground, static boxes and the vehicle.
pub fn ray_oracle(
    origin: &Point3,
    dir: &Point3,
    scene: &BackgroundScene,
    vehicle: Option<&VehicleBoxState>,
    max_range: f64,
) -> Option<f64> {
    let o = [origin.x, origin.y, origin.z];
    let d = [dir.x, dir.y, dir.z];
    let mut cands = Vec::new();
    if d[2] < 0.0 && o[2] > 0.0 {
        cands.push(-o[2] / d[2]);
    }
    for b in &scene.static_boxes {
        cands.extend(box_by_faces(b, o, d));
    }
    if let Some(v) = vehicle {
        let (s, c) = v.pose.yaw.sin_cos();
        let (dx, dy) = (o[0] - v.pose.x, o[1] - v.pose.y);
        let lo = [c * dx + s * dy, -s * dx + c * dy, o[2]];
        let ld = [c * d[0] + s * d[1], -s * d[0] + c * d[1], d[2]];
        cands.extend(box_by_faces(&v.body(), lo, ld));
        if let Some(stubs) = &v.mirror_stubs {
            for m in stubs {
                cands.extend(box_by_faces(m, lo, ld));
            }
        }
    }
    cands
        .into_iter()
        .filter(|t| *t > 0.0 && *t <= max_range)
        .min_by(f64::total_cmp)
}

/// Distance from `p` to the surface of a box, inside or out.
pub fn box_surface_distance(b: &Aabb, p: [f64; 3]) -> f64 {
    let lo = [b.min.x, b.min.y, b.min.z];
    let hi = [b.max.x, b.max.y, b.max.z];
    let inside = (0..3).all(|k| p[k] >= lo[k] && p[k] <= hi[k]);
    if inside {
        (0..3)
            .map(|k| (p[k] - lo[k]).min(hi[k] - p[k]))
            .fold(f64::INFINITY, f64::min)
    } else {
        (0..3)
            .map(|k| (lo[k] - p[k]).max(p[k] - hi[k]).max(0.0).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

/// Distance from a map-frame point to the nearest scene surface.
pub fn surface_residual(p: &Point3, scene: &BackgroundScene, vehicle: Option<&VehicleBoxState>) -> f64 {
    let mut best = p.z.abs();
    for b in &scene.static_boxes {
        best = best.min(box_surface_distance(b, [p.x, p.y, p.z]));
    }
    if let Some(v) = vehicle {
        let local = v.pose.inverse_transform_point(Point2::new(p.x, p.y));
        let q = [local.x, local.y, p.z];
        best = best.min(box_surface_distance(&v.body(), q));
        if let Some(stubs) = &v.mirror_stubs {
            for m in stubs {
                best = best.min(box_surface_distance(m, q));
            }
        }
    }
    best
}

/// Foreground predicate evaluated with a double loop over the reference.
pub fn foreground_oracle(
    reference: &[Point3],
    current: &[Point3],
    roi_center: Point2,
    roi_radius: f64,
    threshold: f64,
) -> Vec<Point3> {
    current
        .iter()
        .filter(|p| (p.x - roi_center.x).hypot(p.y - roi_center.y) <= roi_radius)
        .filter(|p| {
            let nn = reference
                .iter()
                .map(|r| ((p.x - r.x).powi(2) + (p.y - r.y).powi(2) + (p.z - r.z).powi(2)).sqrt())
                .fold(f64::INFINITY, f64::min);
            nn > threshold
        })
        .copied()
        .collect()
}

/// Random reference/current pair: the current frame reuses some reference
/// points verbatim, jitters others on either side of `threshold`, and adds
/// fresh points.
pub fn random_frames<R: Rng>(rng: &mut R, threshold: f64) -> (Vec<Point3>, Vec<Point3>) {
    let n = rng.random_range(200..600);
    let reference: Vec<Point3> = (0..n)
        .map(|_| {
            Point3::new(
                rng.random_range(-15.0..15.0),
                rng.random_range(-15.0..15.0),
                rng.random_range(-2.0..1.0),
            )
        })
        .collect();
    let mut current = Vec::new();
    for r in &reference {
        match rng.random_range(0..4) {
            0 => current.push(*r),
            1 => {
                let s = rng.random_range(0.0..2.0 * threshold);
                let a: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                current.push(Point3::new(r.x + s * a.cos(), r.y + s * a.sin(), r.z));
            }
            _ => {}
        }
    }
    for _ in 0..rng.random_range(20..200) {
        current.push(Point3::new(
            rng.random_range(-15.0..15.0),
            rng.random_range(-15.0..15.0),
            rng.random_range(-2.0..1.0),
        ));
    }
    (reference, current)
}

/// Variance criterion written out longhand: two-pass variance of each
/// point's distance to its nearer edge, per axis. Points equidistant from
/// both axes' edges count toward neither.
pub fn criterion_oracle(points: &[Point2], theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let a: Vec<f64> = points.iter().map(|p| p.x * c + p.y * s).collect();
    let b: Vec<f64> = points.iter().map(|p| -p.x * s + p.y * c).collect();
    let (amin, amax) = (a.iter().copied().fold(f64::INFINITY, f64::min), a.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    let (bmin, bmax) = (b.iter().copied().fold(f64::INFINITY, f64::min), b.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    let mut d1 = Vec::new();
    let mut d2 = Vec::new();
    for (x, y) in a.iter().zip(&b) {
        let u = (amax - x).min(x - amin);
        let v = (bmax - y).min(y - bmin);
        if u < v {
            d1.push(u);
        } else if v < u {
            d2.push(v);
        }
    }
    variance(&d1) + variance(&d2)
}

fn variance(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / n
}

/// Noisy samples on the two near edges of a rectangle, with the far ends
/// of each edge cut short by up to a third.
pub fn random_l_cloud<R: Rng>(rng: &mut R) -> (Vec<Point2>, Pose2D) {
    let len = rng.random_range(3.0..5.5);
    let wid = rng.random_range(1.4..2.2);
    let pose = Pose2D::new(
        rng.random_range(-20.0..20.0),
        rng.random_range(-20.0..20.0),
        rng.random_range(0.0..std::f64::consts::PI),
    );
    let cut1 = rng.random_range(0.0..len / 3.0);
    let cut2 = rng.random_range(0.0..wid / 3.0);
    let sigma = rng.random_range(0.0..0.02);
    let n1 = rng.random_range(20..60);
    let n2 = rng.random_range(10..30);
    let mut pts = Vec::new();
    let mut push = |x: f64, y: f64, rng: &mut R| {
        let nx = sigma * (rng.random::<f64>() - 0.5) * 2.0;
        let ny = sigma * (rng.random::<f64>() - 0.5) * 2.0;
        pts.push(pose.transform_point(Point2::new(x + nx, y + ny)));
    };
    for i in 0..n1 {
        let t = i as f64 / (n1 - 1) as f64;
        push(-len / 2.0 + t * (len - cut1), -wid / 2.0, rng);
    }
    for i in 1..n2 {
        let t = i as f64 / (n2 - 1) as f64;
        push(-len / 2.0, -wid / 2.0 + t * (wid - cut2), rng);
    }
    (pts, pose)
}

/// Distance between two headings on the 90° circle.
pub fn quarter_turn_gap(a: f64, b: f64) -> f64 {
    let q = std::f64::consts::FRAC_PI_2;
    let d = (a - b).rem_euclid(q);
    d.min(q - d)
}

/// Outcome of the fine-grid check for one cloud.
pub struct GridCheck {
    pub returned: f64,
    pub coarse_min: f64,
    pub fine_argmin: f64,
    pub heading: f64,
}

/// Evaluates the criterion on the coarse candidate grid and on a 0.01°
/// grid over [0°, 90°).
pub fn grid_check(points: &[Point2], heading: f64, angle_step: f64) -> GridCheck {
    let q = std::f64::consts::FRAC_PI_2;
    let n = (q / angle_step).ceil() as usize;
    let coarse_min = (0..n)
        .map(|k| k as f64 * angle_step)
        .filter(|t| *t < q)
        .map(|t| criterion_oracle(points, t))
        .fold(f64::INFINITY, f64::min);
    let fine_step = 0.01f64.to_radians();
    let (mut best, mut arg) = (f64::INFINITY, 0.0);
    for k in 0..9000 {
        let t = k as f64 * fine_step;
        let v = criterion_oracle(points, t);
        if v < best {
            best = v;
            arg = t;
        }
    }
    GridCheck {
        returned: criterion_oracle(points, heading),
        coarse_min,
        fine_argmin: arg,
        heading,
    }
}

impl GridCheck {
    /// The returned heading scores the coarse-grid minimum and sits within
    /// one coarse step of the fine-grid minimizer.
    pub fn agrees(&self, angle_step: f64) -> bool {
        let same = (self.returned - self.coarse_min).abs() <= 1e-9 * self.coarse_min.max(1e-12);
        same && quarter_turn_gap(self.heading, self.fine_argmin) <= angle_step + 1e-12
    }
}

use rsuloc::covariance::CovarianceSpec;
use rsuloc::ekf::model::{motion, motion_jacobian, StateVec};
use rsuloc::ekf::{EkfConfig, EkfState, Filter};
use rsuloc::measurement::{PoseMeasurement, Source};

/// Largest gap between the motion Jacobian and central differences over
/// `n` random states.
pub fn jacobian_fd_gap<R: Rng>(rng: &mut R, n: usize) -> f64 {
    let h = 1e-6;
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let x = StateVec::new(
            rng.random_range(-50.0..50.0),
            rng.random_range(-50.0..50.0),
            rng.random_range(-3.0..3.0),
            rng.random_range(-15.0..15.0),
            rng.random_range(-1.0..1.0),
        );
        let dt = rng.random_range(0.005..0.1);
        let j = motion_jacobian(&x, dt);
        for col in 0..5 {
            let mut up = x;
            let mut dn = x;
            up[col] += h;
            dn[col] -= h;
            let (fu, fd) = (motion(&up, dt), motion(&dn, dt));
            for row in 0..5 {
                let mut diff = fu[row] - fd[row];
                if row == 2 {
                    diff = (diff + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU) - std::f64::consts::PI;
                }
                worst = worst.max((diff / (2.0 * h) - j[(row, col)]).abs());
            }
        }
    }
    worst
}

pub fn rsu_fix(x: f64, y: f64, stamp: f64) -> PoseMeasurement {
    PoseMeasurement::new(Pose2D::new(x, y, 0.0), CovarianceSpec::planar(0.01).unwrap(), stamp, Source::Rsu).unwrap()
}

pub fn ndt_fix(x: f64, y: f64, yaw: f64, stamp: f64) -> PoseMeasurement {
    PoseMeasurement::new(Pose2D::new(x, y, yaw), CovarianceSpec::ndt(), stamp, Source::Ndt).unwrap()
}

fn start() -> EkfState {
    EkfState::from_pose(0.0, &Pose2D::new(0.0, 0.0, 0.05), 8.0, [0.2, 0.2, 0.02, 1.0, 0.1])
}

fn state_gap(a: &EkfState, b: &EkfState) -> f64 {
    (a.mean - b.mean).abs().max().max((a.cov - b.cov).abs().max())
}

/// One fix sensed at tick 5 and applied 30 ms later, compared with a
/// filter that applied it on time. Returns the largest mean or covariance
/// difference at the end.
pub fn single_delay_gap() -> f64 {
    let cfg = EkfConfig::default();
    let dt = cfg.dt();
    let fix = rsu_fix(0.9, 0.1, 5.0 * dt);
    let mut on_time = Filter::new(cfg, start());
    let mut late = Filter::new(cfg, start());
    for k in 1..=15u32 {
        let t = k as f64 * dt;
        on_time.advance_to(t).unwrap();
        late.advance_to(t).unwrap();
        if k == 5 {
            on_time.update(&fix).unwrap();
        }
        // the fix is in flight until 0.13 s and picked up on the next tick
        if t >= fix.stamp + 0.03 && t < fix.stamp + 0.03 + dt {
            late.update_delayed(&fix).unwrap();
        }
    }
    state_gap(on_time.state(), late.state())
}

/// A run with onboard fixes on time and roadside fixes either on time or
/// `delay` late, all smoothed. Returns the largest difference between the
/// two final states.
pub fn stream_delay_gap(delay: f64) -> f64 {
    let cfg = EkfConfig::default();
    let dt = cfg.dt();
    let run = |delay: f64| {
        let mut f = Filter::new(cfg, start());
        let mut in_flight: Vec<PoseMeasurement> = Vec::new();
        for k in 1..=200u32 {
            let t = k as f64 * dt;
            f.advance_to(t).unwrap();
            if k % 5 == 0 {
                let x = 8.0 * t;
                f.submit(ndt_fix(x + 0.05 * (k as f64).sin(), 0.4 * t.sin(), 0.05, t));
                in_flight.push(rsu_fix(x + 0.02 * (k as f64 * 0.7).cos(), 0.01 * k as f64 / 200.0, t));
            }
            let (ready, rest): (Vec<_>, Vec<_>) = in_flight
                .into_iter()
                .partition(|m| m.stamp + delay <= t + 1e-9);
            in_flight = rest;
            for m in ready {
                f.submit(m);
            }
            f.apply_pending().unwrap();
        }
        // let queued partial updates finish
        for k in 201..=220u32 {
            f.advance_to(k as f64 * dt).unwrap();
            for m in std::mem::take(&mut in_flight) {
                f.submit(m);
            }
            f.apply_pending().unwrap();
        }
        f.state().clone()
    };
    state_gap(&run(0.0), &run(delay))
}

use rsuloc::channel::{Channel, ChannelConfig};

/// Sends `n` messages through a lossy channel. Returns the number dropped
/// and the 3σ binomial half-width around `n·p`.
pub fn loss_trial(p: f64, n: u64, seed: u64) -> (u64, f64) {
    let mut ch = Channel::from_config(ChannelConfig {
        delay: 0.0,
        loss_prob: p,
        seed,
    });
    for k in 0..n {
        ch.send(k, k as f64 * 0.1);
    }
    (ch.dropped(), 3.0 * (n as f64 * p * (1.0 - p)).sqrt())
}

/// Every file under `dir`, as (relative path, bytes), sorted by path.
pub fn read_tree(dir: &std::path::Path) -> Vec<(std::path::PathBuf, Vec<u8>)> {
    walkdir::WalkDir::new(dir)
        .sort_by_file_name()
        .into_iter()
        .map(Result::unwrap)
        .filter(|e| e.file_type().is_file())
        .map(|e| {
            let rel = e.path().strip_prefix(dir).unwrap().to_path_buf();
            (rel, std::fs::read(e.path()).unwrap())
        })
        .collect()
}
