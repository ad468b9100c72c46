// The rectangle fit only sees the two faces turned toward the sensor, and
// the far ends of those faces are often missing. Anchoring a box of the
// known vehicle size at the corner nearest the sensor restores them.

use rsuloc::geometry::{Point2, Pose2D};
use rsuloc::measurement::VehicleSpec;
use rsuloc::perception::lshape::DEFAULT_ANGLE_STEP_DEG;
use rsuloc::perception::{fit_lshape, refine_with_dimensions, select_alignment_point};

pub fn run_example() -> rsuloc::Result<()> {
    let spec = VehicleSpec::new("car", 4.5, 1.8, 1.5)?;
    let truth = Pose2D::new(12.0, 5.0, 25f64.to_radians());
    let (hl, hw) = (spec.length / 2.0, spec.width / 2.0);
    // behind and to the right of the car, so the rear face and right side show
    let sensor = truth.transform_point(Point2::new(-12.0, -8.0));

    // visible rear face and right side, each cut short by 0.6 m at the far end
    let mut local = Vec::new();
    for i in 0..=20 {
        let t = i as f64 / 20.0;
        local.push(Point2::new(-hl + t * (spec.length - 0.6), -hw));
        local.push(Point2::new(-hl, -hw + t * (spec.width - 0.6)));
    }
    let points: Vec<Point2> = local.iter().map(|p| truth.transform_point(*p)).collect();

    let rect = fit_lshape(&points, DEFAULT_ANGLE_STEP_DEG.to_radians())?;
    let alignment = select_alignment_point(&rect, sensor);
    let refined = refine_with_dimensions(&rect, &spec, alignment, Some(truth.yaw));

    println!(
        "fitted: heading {:.1} deg, extents {:.2} x {:.2}, center error {:.3} m",
        rect.heading.to_degrees(),
        rect.extent_e1,
        rect.extent_e2,
        rect.center.distance(&truth.position())
    );
    println!(
        "refined: yaw {:.1} deg, center error {:.2e} m (alignment corner #{})",
        refined.yaw.to_degrees(),
        refined.planar_distance(&truth),
        alignment.1
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> rsuloc::Result<()> {
    run_example()
}
