// Background subtraction against a vehicle-free reference sweep, followed
// by the low-point selection that feeds the rectangle fit.

use rsuloc::geometry::{MountPose, Point2, Point3, Pose2D};
use rsuloc::measurement::VehicleSpec;
use rsuloc::perception::background::{DEFAULT_HEIGHT_CUTOFF, DEFAULT_MATCH_THRESHOLD, DEFAULT_POINT_CAP};
use rsuloc::perception::{build_background_index, filter_foreground, select_lfa_points};
use rsuloc::rng;
use rsuloc::scan::{generate_scan, Aabb, BackgroundScene, SensorModel, VehicleBoxState};

pub fn run_example() -> rsuloc::Result<()> {
    let sensor = SensorModel::vlp32c();
    let mount = MountPose {
        pose: Pose2D::new(0.0, 0.0, 0.0),
        height: 2.0,
    };
    let scene = BackgroundScene::new(vec![
        Aabb::new(Point3::new(-10.0, 10.0, 0.0), Point3::new(6.0, 18.0, 9.0)),
        Aabb::new(Point3::new(14.8, 2.3, 0.0), Point3::new(15.2, 2.7, 4.5)),
    ])?;
    let car = VehicleBoxState::new(
        Pose2D::new(-12.0, -6.0, 0.0),
        VehicleSpec::new("car", 4.5, 1.8, 1.5)?,
    );

    let reference = generate_scan(&sensor, &mount, &scene, None, 0.0, "rsu", &mut rng::stream(1, "reference", 0));
    let frame = generate_scan(&sensor, &mount, &scene, Some(&car), 0.1, "rsu", &mut rng::stream(1, "scan", 0));
    let index = build_background_index(&reference)?;

    // ROI around the last known vehicle position, in the sensor frame
    let roi = mount.pose.inverse_transform_point(Point2::new(-11.7, -6.1));
    let fg = filter_foreground(&index, &frame, roi, 10.0, DEFAULT_MATCH_THRESHOLD);
    let lifted: Vec<Point3> = fg
        .points
        .iter()
        .map(|p| Point3::new(p.x, p.y, p.z + mount.height))
        .collect();
    let lfa = select_lfa_points(&lifted, 0.0, DEFAULT_HEIGHT_CUTOFF, DEFAULT_POINT_CAP);

    println!("reference {} points, frame {} points", reference.len(), frame.len());
    println!("foreground inside the 10 m ROI: {}", fg.len());
    match lfa {
        Some(p) => println!("points kept for the rectangle fit: {}", p.len()),
        None => println!("too few low points, no detection this frame"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> rsuloc::Result<()> {
    run_example()
}
