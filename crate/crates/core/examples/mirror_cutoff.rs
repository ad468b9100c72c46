// Side mirrors widen the silhouette of a car seen from above. Keeping only
// returns below 0.8 m leaves the body outline, and the fit stops
// overestimating the width.

use rsuloc::geometry::{MountPose, Point3, Pose2D};
use rsuloc::measurement::VehicleSpec;
use rsuloc::perception::fit_lshape;
use rsuloc::perception::select_lfa_points;
use rsuloc::rng;
use rsuloc::scan::{generate_scan_with_info, BackgroundScene, SensorModel, Surface, VehicleBoxState};

pub fn run_example() -> rsuloc::Result<()> {
    let mut sensor = SensorModel::vlp32c();
    sensor.range_noise_sigma = 0.0;
    let mount = MountPose {
        pose: Pose2D::new(0.0, 0.0, 0.0),
        height: 2.0,
    };
    let spec = VehicleSpec::new("car", 4.5, 1.8, 1.5)?;
    let car = VehicleBoxState::new(Pose2D::new(-6.0, -7.0, 0.0), spec).with_mirrors();
    let (cloud, info) = generate_scan_with_info(
        &sensor,
        &mount,
        &BackgroundScene::default(),
        Some(&car),
        0.0,
        "rsu",
        &mut rng::stream(3, "scan", 0),
    );

    let on_car: Vec<Point3> = cloud
        .points
        .iter()
        .zip(&info)
        .filter(|(_, i)| matches!(i.hit.surface, Surface::Vehicle(_) | Surface::Mirror(_)))
        .map(|(p, _)| Point3::new(p.x, p.y, p.z + mount.height))
        .collect();
    let mirrors = info
        .iter()
        .filter(|i| matches!(i.hit.surface, Surface::Mirror(_)))
        .count();
    println!("{} points on the car, {} of them on mirrors", on_car.len(), mirrors);

    for cutoff in [10.0, 0.8] {
        let Some(pts) = select_lfa_points(&on_car, 0.0, cutoff, usize::MAX) else {
            println!("cutoff {cutoff} m: too few points");
            continue;
        };
        let rect = fit_lshape(&pts, 1f64.to_radians())?;
        let width = rect.extent_e1.min(rect.extent_e2);
        println!("cutoff {cutoff:>4} m: {} points, fitted width {:.3} m", pts.len(), width);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> rsuloc::Result<()> {
    run_example()
}
