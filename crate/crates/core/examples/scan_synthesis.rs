// Synthesizes one sweep of each bundled sensor model with a car parked
// 15 m from the pole and reports what each one sees of it.

use std::collections::BTreeMap;

use rsuloc::geometry::{MountPose, Pose2D};
use rsuloc::measurement::VehicleSpec;
use rsuloc::rng;
use rsuloc::scan::{generate_scan_with_info, BackgroundScene, SensorModel, Surface, VehicleBoxState};

pub fn run_example() -> rsuloc::Result<()> {
    let mount = MountPose {
        pose: Pose2D::new(0.0, 0.0, 0.0),
        height: 2.0,
    };
    let car = VehicleBoxState::new(
        Pose2D::new(4.0, -15.0, 0.0),
        VehicleSpec::new("car", 4.5, 1.8, 1.5)?,
    );
    let scene = BackgroundScene::default();

    for sensor in [SensorModel::vlp16(), SensorModel::vlp32c()] {
        let mut r = rng::stream(7, "scan", 0);
        let (cloud, info) =
            generate_scan_with_info(&sensor, &mount, &scene, Some(&car), 0.0, "rsu", &mut r);
        let mut faces: BTreeMap<String, usize> = BTreeMap::new();
        let mut low = 0;
        for (p, i) in cloud.points.iter().zip(&info) {
            if let Surface::Vehicle(face) = i.hit.surface {
                *faces.entry(format!("{face:?}")).or_default() += 1;
                if p.z + mount.height < 0.8 {
                    low += 1;
                }
            }
        }
        println!(
            "{}: {} beams x {} columns -> {} returns; vehicle faces {:?}; {} vehicle points below 0.8 m",
            sensor.model_id,
            sensor.elevations.len(),
            sensor.columns(),
            cloud.len(),
            faces,
            low
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> rsuloc::Result<()> {
    run_example()
}
