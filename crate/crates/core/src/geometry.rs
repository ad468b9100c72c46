//! Planar poses, points and frame transforms.
//!
//! Frames are right-handed and z-up; yaw is measured counter-clockwise
//! from +x. A `Pose2D` describes where a child frame sits inside its parent.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn xy(&self) -> Point2 {
        Point2::new(self.x, self.y)
    }

    pub fn distance_squared(&self, other: &Point3) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        dx * dx + dy * dy + dz * dz
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// Wraps an angle into (−π, π].
pub fn normalize_yaw(a: f64) -> Result<f64> {
    if !a.is_finite() {
        return Err(Error::InvalidInput(format!("non-finite angle {a}")));
    }
    Ok(wrap_angle(a))
}

/// Infallible variant of [`normalize_yaw`] for values already known finite.
pub(crate) fn wrap_angle(a: f64) -> f64 {
    if a > -PI && a <= PI {
        return a;
    }
    let mut r = a.rem_euclid(TAU);
    if r > PI {
        r -= TAU;
    }
    // values within rounding of −π belong to +π
    if r <= -PI + 4.0 * f64::EPSILON * a.abs().max(1.0) {
        r += TAU;
    }
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Pose2D {
    pub x: f64,
    pub y: f64,
    pub yaw: f64,
}

impl Pose2D {
    pub fn new(x: f64, y: f64, yaw: f64) -> Self {
        Self {
            x,
            y,
            yaw: wrap_angle(yaw),
        }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn position(&self) -> Point2 {
        Point2::new(self.x, self.y)
    }

    pub fn is_valid(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.yaw > -PI && self.yaw <= PI
    }

    /// Expresses `child_in_parent` in the frame this pose lives in.
    pub fn compose(&self, child_in_parent: &Pose2D) -> Pose2D {
        let (s, c) = self.yaw.sin_cos();
        Pose2D::new(
            self.x + c * child_in_parent.x - s * child_in_parent.y,
            self.y + s * child_in_parent.x + c * child_in_parent.y,
            self.yaw + child_in_parent.yaw,
        )
    }

    pub fn inverse(&self) -> Pose2D {
        let (s, c) = self.yaw.sin_cos();
        Pose2D::new(
            -(c * self.x + s * self.y),
            s * self.x - c * self.y,
            -self.yaw,
        )
    }

    pub fn transform_point(&self, p: Point2) -> Point2 {
        let (s, c) = self.yaw.sin_cos();
        Point2::new(self.x + c * p.x - s * p.y, self.y + s * p.x + c * p.y)
    }

    pub fn inverse_transform_point(&self, p: Point2) -> Point2 {
        let (s, c) = self.yaw.sin_cos();
        let dx = p.x - self.x;
        let dy = p.y - self.y;
        Point2::new(c * dx + s * dy, -s * dx + c * dy)
    }

    pub fn planar_distance(&self, other: &Pose2D) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// `compose_pose(parent, child)`; see [`Pose2D::compose`].
pub fn compose_pose(parent: &Pose2D, child_in_parent: &Pose2D) -> Pose2D {
    parent.compose(child_in_parent)
}

/// A sensor (or other 3D) frame placed in the map by a planar pose plus a
/// height above the ground plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MountPose {
    pub pose: Pose2D,
    pub height: f64,
}

impl MountPose {
    pub fn origin(&self) -> Point3 {
        Point3::new(self.pose.x, self.pose.y, self.height)
    }

    pub fn to_map(&self, p: &Point3) -> Point3 {
        let q = self.pose.transform_point(p.xy());
        Point3::new(q.x, q.y, p.z + self.height)
    }

    pub fn to_sensor(&self, p: &Point3) -> Point3 {
        let q = self.pose.inverse_transform_point(p.xy());
        Point3::new(q.x, q.y, p.z - self.height)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    pub frame_id: String,
    pub stamp: f64,
    pub points: Vec<Point3>,
}

impl PointCloud {
    pub fn new(frame_id: impl Into<String>, stamp: f64, points: Vec<Point3>) -> Result<Self> {
        let frame_id = frame_id.into();
        if frame_id.is_empty() {
            return Err(Error::InvalidInput("empty frame_id".into()));
        }
        if let Some(p) = points.iter().find(|p| !p.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite point {p:?}")));
        }
        Ok(Self {
            frame_id,
            stamp,
            points,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: &Pose2D, b: &Pose2D, tol: f64) -> bool {
        (a.x - b.x).abs() < tol
            && (a.y - b.y).abs() < tol
            && wrap_angle(a.yaw - b.yaw).abs() < tol
    }

    #[test]
    fn identity_parent() {
        let c = Pose2D::new(3.0, 4.0, 0.5);
        assert_eq!(compose_pose(&Pose2D::identity(), &c), c);
    }

    #[test]
    fn quarter_turn() {
        let p = Pose2D::new(10.0, 0.0, PI / 2.0);
        let r = compose_pose(&p, &Pose2D::new(1.0, 0.0, 0.0));
        assert!(close(&r, &Pose2D::new(10.0, 1.0, PI / 2.0), 1e-12));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_yaw(0.0).unwrap(), 0.0);
        assert!((normalize_yaw(3.0 * PI).unwrap() - PI).abs() < 1e-12);
        assert_eq!(normalize_yaw(-PI).unwrap(), PI);
        assert!(normalize_yaw(f64::NAN).is_err());
        assert!(normalize_yaw(f64::INFINITY).is_err());
    }

    #[test]
    fn cloud_rejects_bad_input() {
        assert!(PointCloud::new("", 0.0, vec![]).is_err());
        assert!(PointCloud::new("s", 0.0, vec![Point3::new(f64::NAN, 0.0, 0.0)]).is_err());
    }

    #[test]
    fn mount_round_trip() {
        let m = MountPose {
            pose: Pose2D::new(5.0, -2.0, 0.7),
            height: 2.0,
        };
        let p = Point3::new(1.0, 2.0, -1.5);
        let q = m.to_sensor(&m.to_map(&p));
        assert!(p.distance_squared(&q) < 1e-24);
    }

    fn pose() -> impl Strategy<Value = Pose2D> {
        (-100.0..100.0f64, -100.0..100.0f64, -10.0..10.0f64)
            .prop_map(|(x, y, yaw)| Pose2D::new(x, y, yaw))
    }

    proptest! {
        #[test]
        fn inverse_round_trip(p in pose(), c in pose()) {
            let r = p.compose(&p.inverse().compose(&c));
            prop_assert!(close(&r, &c, 1e-12));
        }

        #[test]
        fn compose_associative(a in pose(), b in pose(), c in pose()) {
            let l = a.compose(&b).compose(&c);
            let r = a.compose(&b.compose(&c));
            prop_assert!(close(&l, &r, 1e-12));
        }

        #[test]
        fn normalize_is_modular(a in -10.0 * PI..10.0 * PI) {
            let n = normalize_yaw(a).unwrap();
            prop_assert!(n > -PI && n <= PI);
            let k = (n - a) / TAU;
            prop_assert!((k - k.round()).abs() < 1e-12);
            prop_assert_eq!(normalize_yaw(n).unwrap(), n);
        }
    }
}
