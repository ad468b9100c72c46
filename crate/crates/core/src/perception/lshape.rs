//! Search-based L-shape rectangle fitting.
//!
//! Candidate headings are swept over a quarter turn. For each heading the
//! points are projected onto the rectangle axes, the rectangle edges sit at
//! the projection extremes, and the heading is scored with the variance
//! criterion: every point contributes its distance to the nearer edge of the
//! axis it is closest to, and the score is the sum of the variances of the
//! two resulting distance sets. The lowest score wins.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::geometry::Point2;

pub const DEFAULT_ANGLE_STEP_DEG: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedRect {
    pub center: Point2,
    /// Radians in [0, π/2).
    pub heading: f64,
    pub extent_e1: f64,
    pub extent_e2: f64,
}

impl OrientedRect {
    pub fn e1(&self) -> Point2 {
        Point2::new(self.heading.cos(), self.heading.sin())
    }

    pub fn e2(&self) -> Point2 {
        Point2::new(-self.heading.sin(), self.heading.cos())
    }

    /// Corner 0 is `center − e1·extent_e1/2 − e2·extent_e2/2`; the rest follow
    /// counter-clockwise.
    pub fn corners(&self) -> [Point2; 4] {
        let e1 = self.e1();
        let e2 = self.e2();
        let h1 = self.extent_e1 / 2.0;
        let h2 = self.extent_e2 / 2.0;
        CORNER_SIGNS.map(|(s1, s2)| {
            Point2::new(
                self.center.x + s1 * h1 * e1.x + s2 * h2 * e2.x,
                self.center.y + s1 * h1 * e1.y + s2 * h2 * e2.y,
            )
        })
    }

    /// Whether `p` lies inside the rectangle grown by `margin` on every side.
    pub fn contains(&self, p: &Point2, margin: f64) -> bool {
        let dx = p.x - self.center.x;
        let dy = p.y - self.center.y;
        let (e1, e2) = (self.e1(), self.e2());
        let u = dx * e1.x + dy * e1.y;
        let v = dx * e2.x + dy * e2.y;
        u.abs() <= self.extent_e1 / 2.0 + margin && v.abs() <= self.extent_e2 / 2.0 + margin
    }
}

/// Signs of the (e1, e2) half-extent offsets for each corner index.
pub(crate) const CORNER_SIGNS: [(f64, f64); 4] = [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)];

pub fn corners(rect: &OrientedRect) -> [Point2; 4] {
    rect.corners()
}

/// Candidate headings `k·step` strictly below π/2.
pub fn candidate_headings(angle_step: f64) -> Vec<f64> {
    let n = (FRAC_PI_2 / angle_step).ceil() as usize;
    (0..n)
        .map(|k| k as f64 * angle_step)
        .filter(|t| *t < FRAC_PI_2)
        .collect()
}

struct Projection {
    c1: Vec<f64>,
    c2: Vec<f64>,
    min1: f64,
    max1: f64,
    min2: f64,
    max2: f64,
}

fn project(points: &[Point2], theta: f64, buf: &mut Projection) {
    let (s, c) = theta.sin_cos();
    buf.c1.clear();
    buf.c2.clear();
    buf.min1 = f64::INFINITY;
    buf.max1 = f64::NEG_INFINITY;
    buf.min2 = f64::INFINITY;
    buf.max2 = f64::NEG_INFINITY;
    for p in points {
        let a = p.x * c + p.y * s;
        let b = -p.x * s + p.y * c;
        buf.min1 = buf.min1.min(a);
        buf.max1 = buf.max1.max(a);
        buf.min2 = buf.min2.min(b);
        buf.max2 = buf.max2.max(b);
        buf.c1.push(a);
        buf.c2.push(b);
    }
}

#[derive(Default)]
struct RunningVar {
    n: f64,
    sum: f64,
    sum_sq: f64,
}

impl RunningVar {
    fn push(&mut self, x: f64) {
        self.n += 1.0;
        self.sum += x;
        self.sum_sq += x * x;
    }

    fn variance(&self) -> f64 {
        if self.n == 0.0 {
            return 0.0;
        }
        let mean = self.sum / self.n;
        (self.sum_sq / self.n - mean * mean).max(0.0)
    }
}

fn score(buf: &Projection) -> f64 {
    let mut e1 = RunningVar::default();
    let mut e2 = RunningVar::default();
    for (a, b) in buf.c1.iter().zip(&buf.c2) {
        let d1 = (buf.max1 - a).min(a - buf.min1);
        let d2 = (buf.max2 - b).min(b - buf.min2);
        if d1 < d2 {
            e1.push(d1);
        } else if d2 < d1 {
            e2.push(d2);
        }
    }
    e1.variance() + e2.variance()
}

/// Variance criterion for one heading (lower is better).
pub fn lshape_criterion(points: &[Point2], theta: f64) -> f64 {
    let mut buf = Projection {
        c1: Vec::with_capacity(points.len()),
        c2: Vec::with_capacity(points.len()),
        min1: 0.0,
        max1: 0.0,
        min2: 0.0,
        max2: 0.0,
    };
    project(points, theta, &mut buf);
    score(&buf)
}

/// Endpoints of the longest chord found by two farthest-point sweeps.
fn principal_chord(points: &[Point2]) -> Result<(Point2, Point2)> {
    let a = *points
        .first()
        .ok_or_else(|| Error::Degenerate("no points".into()))?;
    let far = points
        .iter()
        .copied()
        .max_by(|p, q| a.distance(p).total_cmp(&a.distance(q)))
        .unwrap_or(a);
    let b = points
        .iter()
        .copied()
        .max_by(|p, q| far.distance(p).total_cmp(&far.distance(q)))
        .unwrap_or(far);
    if far.distance(&b) < 1e-6 {
        return Err(Error::Degenerate("points coincide".into()));
    }
    Ok((far, b))
}

fn check_non_collinear(points: &[Point2]) -> Result<()> {
    if points.len() < 3 {
        return Err(Error::Degenerate(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    let (far, b) = principal_chord(points)?;
    let len = far.distance(&b);
    let (ux, uy) = ((b.x - far.x) / len, (b.y - far.y) / len);
    let spread = points
        .iter()
        .map(|p| ((p.x - far.x) * uy - (p.y - far.y) * ux).abs())
        .fold(0.0, f64::max);
    if spread < 1e-6 {
        return Err(Error::Degenerate("points are collinear".into()));
    }
    Ok(())
}

fn rect_from_projection(theta: f64, [min1, max1, min2, max2]: [f64; 4]) -> OrientedRect {
    let (s, c) = theta.sin_cos();
    let m1 = (min1 + max1) / 2.0;
    let m2 = (min2 + max2) / 2.0;
    OrientedRect {
        center: Point2::new(m1 * c - m2 * s, m1 * s + m2 * c),
        heading: theta,
        extent_e1: max1 - min1,
        extent_e2: max2 - min2,
    }
}

/// Bounding rectangle of points lying on one line, aligned with that line.
/// One extent is (near) zero. Used when only a single vehicle face is seen.
pub fn fit_segment(points: &[Point2]) -> Result<OrientedRect> {
    let (a, b) = principal_chord(points)?;
    let theta = (b.y - a.y).atan2(b.x - a.x).rem_euclid(FRAC_PI_2);
    let theta = if theta >= FRAC_PI_2 { 0.0 } else { theta };
    let mut buf = Projection {
        c1: Vec::with_capacity(points.len()),
        c2: Vec::with_capacity(points.len()),
        min1: 0.0,
        max1: 0.0,
        min2: 0.0,
        max2: 0.0,
    };
    project(points, theta, &mut buf);
    Ok(rect_from_projection(theta, [buf.min1, buf.max1, buf.min2, buf.max2]))
}

pub fn fit_lshape(points: &[Point2], angle_step: f64) -> Result<OrientedRect> {
    if !(angle_step > 0.0 && angle_step < FRAC_PI_2) {
        return Err(Error::InvalidInput(format!("angle step {angle_step}")));
    }
    check_non_collinear(points)?;

    let mut buf = Projection {
        c1: Vec::with_capacity(points.len()),
        c2: Vec::with_capacity(points.len()),
        min1: 0.0,
        max1: 0.0,
        min2: 0.0,
        max2: 0.0,
    };
    let mut best: Option<(f64, f64, [f64; 4])> = None;
    for theta in candidate_headings(angle_step) {
        project(points, theta, &mut buf);
        let cost = score(&buf);
        if best.is_none_or(|(c, _, _)| cost < c) {
            best = Some((cost, theta, [buf.min1, buf.max1, buf.min2, buf.max2]));
        }
    }
    let (_, theta, bounds) = best.expect("at least one heading");
    Ok(rect_from_projection(theta, bounds))
}
