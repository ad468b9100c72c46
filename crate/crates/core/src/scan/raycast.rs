use crate::geometry::{Point3, Pose2D};
use crate::measurement::VehicleSpec;

/// Axis-aligned cuboid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Point3,
    pub max: Point3,
}

impl Aabb {
    pub fn new(min: Point3, max: Point3) -> Self {
        Self { min, max }
    }

    pub fn is_valid(&self) -> bool {
        self.min.is_finite()
            && self.max.is_finite()
            && self.max.x > self.min.x
            && self.max.y > self.min.y
            && self.max.z > self.min.z
    }

    /// Slab test. Returns the nearest positive hit distance and the face hit,
    /// encoded as `axis * 2 + (0 for the min side, 1 for the max side)`.
    pub fn intersect(&self, origin: &Point3, dir: &Point3) -> Option<(f64, u8)> {
        let o = [origin.x, origin.y, origin.z];
        let d = [dir.x, dir.y, dir.z];
        let lo = [self.min.x, self.min.y, self.min.z];
        let hi = [self.max.x, self.max.y, self.max.z];

        let mut t_near = f64::NEG_INFINITY;
        let mut t_far = f64::INFINITY;
        let mut near_face = 0u8;
        let mut far_face = 0u8;
        for axis in 0..3 {
            if d[axis].abs() < 1e-300 {
                if o[axis] < lo[axis] || o[axis] > hi[axis] {
                    return None;
                }
                continue;
            }
            let inv = 1.0 / d[axis];
            let (mut t0, mut t1) = ((lo[axis] - o[axis]) * inv, (hi[axis] - o[axis]) * inv);
            let (mut f0, mut f1) = (axis as u8 * 2, axis as u8 * 2 + 1);
            if t0 > t1 {
                std::mem::swap(&mut t0, &mut t1);
                std::mem::swap(&mut f0, &mut f1);
            }
            if t0 > t_near {
                t_near = t0;
                near_face = f0;
            }
            if t1 < t_far {
                t_far = t1;
                far_face = f1;
            }
            if t_near > t_far {
                return None;
            }
        }
        if t_far <= 0.0 {
            None
        } else if t_near > 0.0 {
            Some((t_near, near_face))
        } else {
            Some((t_far, far_face))
        }
    }
}

/// Vehicle body faces, named in the vehicle frame (+x forward, +y left).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VehicleFace {
    Rear,
    Front,
    Right,
    Left,
    Bottom,
    Top,
}

impl VehicleFace {
    fn from_code(code: u8) -> Self {
        match code {
            0 => VehicleFace::Rear,
            1 => VehicleFace::Front,
            2 => VehicleFace::Right,
            3 => VehicleFace::Left,
            4 => VehicleFace::Bottom,
            _ => VehicleFace::Top,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Surface {
    Ground,
    StaticBox(usize),
    Vehicle(VehicleFace),
    Mirror(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hit {
    pub distance: f64,
    pub surface: Surface,
}

/// Flat ground at z = 0 plus static axis-aligned boxes, all in the map frame.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BackgroundScene {
    pub static_boxes: Vec<Aabb>,
}

impl BackgroundScene {
    pub fn new(static_boxes: Vec<Aabb>) -> crate::Result<Self> {
        if let Some(b) = static_boxes.iter().find(|b| !b.is_valid()) {
            return Err(crate::Error::InvalidInput(format!("degenerate box {b:?}")));
        }
        Ok(Self { static_boxes })
    }
}

/// The vehicle cuboid, frozen for one sweep. `pose` is the footprint center.
#[derive(Debug, Clone, PartialEq)]
pub struct VehicleBoxState {
    pub pose: Pose2D,
    pub spec: VehicleSpec,
    /// Small boxes in the vehicle frame, e.g. side mirrors.
    pub mirror_stubs: Option<[Aabb; 2]>,
}

impl VehicleBoxState {
    pub fn new(pose: Pose2D, spec: VehicleSpec) -> Self {
        Self {
            pose,
            spec,
            mirror_stubs: None,
        }
    }

    /// Adds a pair of mirror stubs sticking out of both sides near the
    /// A-pillars, entirely above 0.8 m.
    pub fn with_mirrors(mut self) -> Self {
        let hl = self.spec.length / 2.0;
        let hw = self.spec.width / 2.0;
        let x0 = hl - 1.7;
        let x1 = hl - 1.45;
        let (z0, z1) = (0.95, 1.15);
        self.mirror_stubs = Some([
            Aabb::new(Point3::new(x0, hw, z0), Point3::new(x1, hw + 0.22, z1)),
            Aabb::new(Point3::new(x0, -hw - 0.22, z0), Point3::new(x1, -hw, z1)),
        ]);
        self
    }

    pub fn body(&self) -> Aabb {
        let hl = self.spec.length / 2.0;
        let hw = self.spec.width / 2.0;
        Aabb::new(
            Point3::new(-hl, -hw, 0.0),
            Point3::new(hl, hw, self.spec.height),
        )
    }

    fn to_local(&self, origin: &Point3, dir: &Point3) -> (Point3, Point3) {
        let (s, c) = self.pose.yaw.sin_cos();
        let dx = origin.x - self.pose.x;
        let dy = origin.y - self.pose.y;
        (
            Point3::new(c * dx + s * dy, -s * dx + c * dy, origin.z),
            Point3::new(c * dir.x + s * dir.y, -s * dir.x + c * dir.y, dir.z),
        )
    }

    fn intersect(&self, origin: &Point3, dir: &Point3) -> Option<Hit> {
        let (o, d) = self.to_local(origin, dir);
        let mut best = self.body().intersect(&o, &d).map(|(t, f)| Hit {
            distance: t,
            surface: Surface::Vehicle(VehicleFace::from_code(f)),
        });
        if let Some(stubs) = &self.mirror_stubs {
            for (i, stub) in stubs.iter().enumerate() {
                if let Some((t, _)) = stub.intersect(&o, &d) {
                    if best.is_none_or(|b| t < b.distance) {
                        best = Some(Hit {
                            distance: t,
                            surface: Surface::Mirror(i),
                        });
                    }
                }
            }
        }
        best
    }
}

/// Nearest surface hit along a unit ray, within `max_range`.
pub fn cast_ray_hit(
    origin: &Point3,
    dir: &Point3,
    scene: &BackgroundScene,
    vehicle: Option<&VehicleBoxState>,
    max_range: f64,
) -> Option<Hit> {
    let mut best: Option<Hit> = None;
    let mut consider = |h: Hit| {
        if h.distance > 0.0 && h.distance <= max_range && best.is_none_or(|b| h.distance < b.distance) {
            best = Some(h);
        }
    };

    if dir.z < 0.0 && origin.z > 0.0 {
        consider(Hit {
            distance: -origin.z / dir.z,
            surface: Surface::Ground,
        });
    }
    for (i, b) in scene.static_boxes.iter().enumerate() {
        if let Some((t, _)) = b.intersect(origin, dir) {
            consider(Hit {
                distance: t,
                surface: Surface::StaticBox(i),
            });
        }
    }
    if let Some(v) = vehicle {
        if let Some(h) = v.intersect(origin, dir) {
            consider(h);
        }
    }
    best
}

pub fn cast_ray(
    origin: &Point3,
    dir: &Point3,
    scene: &BackgroundScene,
    vehicle: Option<&VehicleBoxState>,
    max_range: f64,
) -> Option<f64> {
    debug_assert!((dir.norm() - 1.0).abs() < 1e-9, "direction must be unit length");
    cast_ray_hit(origin, dir, scene, vehicle, max_range).map(|h| h.distance)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn car(x: f64) -> VehicleBoxState {
        VehicleBoxState::new(
            Pose2D::new(x, 0.0, 0.0),
            VehicleSpec::new("car", 4.0, 2.0, 1.5).unwrap(),
        )
    }

    #[test]
    fn straight_down_hits_ground() {
        let scene = BackgroundScene::default();
        let d = cast_ray(
            &Point3::new(0.0, 0.0, 2.0),
            &Point3::new(0.0, 0.0, -1.0),
            &scene,
            None,
            100.0,
        );
        assert_eq!(d, Some(2.0));
    }

    #[test]
    fn horizontal_ray_passes_over_low_vehicle() {
        let scene = BackgroundScene::default();
        // near face at x = 10
        let v = car(12.0);
        let d = cast_ray(
            &Point3::new(0.0, 0.0, 2.0),
            &Point3::new(1.0, 0.0, 0.0),
            &scene,
            Some(&v),
            100.0,
        );
        assert_eq!(d, None);
        let low = cast_ray_hit(
            &Point3::new(0.0, 0.0, 1.0),
            &Point3::new(1.0, 0.0, 0.0),
            &scene,
            Some(&v),
            100.0,
        )
        .unwrap();
        assert!((low.distance - 10.0).abs() < 1e-12);
        assert_eq!(low.surface, Surface::Vehicle(VehicleFace::Rear));
    }

    #[test]
    fn range_limit_applies() {
        let scene = BackgroundScene::default();
        let dir = Point3::new(1.0, 0.0, 0.0);
        let v = car(12.0);
        let o = Point3::new(0.0, 0.0, 1.0);
        assert!(cast_ray(&o, &dir, &scene, Some(&v), 9.99).is_none());
        assert!(cast_ray(&o, &dir, &scene, Some(&v), 10.0).is_some());
    }

    #[test]
    fn mirrors_are_hit_above_cutoff() {
        let scene = BackgroundScene::default();
        let v = car(0.0).with_mirrors();
        // straight down onto the left mirror
        let stub = v.mirror_stubs.unwrap()[0];
        let cx = (stub.min.x + stub.max.x) / 2.0;
        let cy = (stub.min.y + stub.max.y) / 2.0;
        let h = cast_ray_hit(
            &Point3::new(cx, cy, 3.0),
            &Point3::new(0.0, 0.0, -1.0),
            &scene,
            Some(&v),
            100.0,
        )
        .unwrap();
        assert_eq!(h.surface, Surface::Mirror(0));
        assert!((h.distance - (3.0 - 1.15)).abs() < 1e-12);
    }

    #[test]
    fn origin_inside_box_reports_exit() {
        let b = Aabb::new(Point3::new(-1.0, -1.0, -1.0), Point3::new(1.0, 1.0, 1.0));
        let (t, face) = b
            .intersect(&Point3::new(0.0, 0.0, 0.0), &Point3::new(1.0, 0.0, 0.0))
            .unwrap();
        assert_eq!(t, 1.0);
        assert_eq!(face, 1);
    }
}
