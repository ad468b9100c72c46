use rand::Rng;
use rand_distr::{Distribution, Normal};

use super::raycast::{cast_ray_hit, BackgroundScene, Hit, VehicleBoxState};
use super::SensorModel;
use crate::geometry::{MountPose, Point3, PointCloud};

/// Per-point bookkeeping that accompanies a generated scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReturnInfo {
    pub column: u32,
    pub ring: u16,
    pub hit: Hit,
}

/// One full sweep in the sensor frame. Points are ordered azimuth-major,
/// elevation-minor; each hit distance gets Gaussian range noise before being
/// converted to Cartesian coordinates.
pub fn generate_scan<R: Rng + ?Sized>(
    sensor: &SensorModel,
    mount: &MountPose,
    scene: &BackgroundScene,
    vehicle: Option<&VehicleBoxState>,
    stamp: f64,
    frame_id: &str,
    rng: &mut R,
) -> PointCloud {
    generate_scan_with_info(sensor, mount, scene, vehicle, stamp, frame_id, rng).0
}

pub fn generate_scan_with_info<R: Rng + ?Sized>(
    sensor: &SensorModel,
    mount: &MountPose,
    scene: &BackgroundScene,
    vehicle: Option<&VehicleBoxState>,
    stamp: f64,
    frame_id: &str,
    rng: &mut R,
) -> (PointCloud, Vec<ReturnInfo>) {
    assert!(mount.height > 0.0, "mount height must be positive");
    let origin = mount.origin();
    let noise = (sensor.range_noise_sigma > 0.0)
        .then(|| Normal::new(0.0, sensor.range_noise_sigma).expect("sigma validated"));
    let rings: Vec<(f64, f64)> = sensor.elevations.iter().map(|e| e.sin_cos()).collect();
    let columns = sensor.columns();

    let mut points = Vec::new();
    let mut info = Vec::new();
    for col in 0..columns {
        let az = col as f64 * sensor.azimuth_step;
        let (sa, ca) = az.sin_cos();
        let (sm, cm) = (az + mount.pose.yaw).sin_cos();
        for (ring, &(se, ce)) in rings.iter().enumerate() {
            let dir_map = Point3::new(ce * cm, ce * sm, se);
            let Some(hit) = cast_ray_hit(&origin, &dir_map, scene, vehicle, sensor.max_range)
            else {
                continue;
            };
            let range = match &noise {
                Some(n) => hit.distance + n.sample(rng),
                None => hit.distance,
            };
            points.push(Point3::new(range * ce * ca, range * ce * sa, range * se));
            info.push(ReturnInfo {
                column: col as u32,
                ring: ring as u16,
                hit,
            });
        }
    }
    let cloud = PointCloud {
        frame_id: frame_id.to_string(),
        stamp,
        points,
    };
    (cloud, info)
}
