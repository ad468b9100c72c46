//! Dimension-based refinement around the alignment point.
//!
//! The fitted corner nearest the roadside sensor is the best-observed part of
//! the vehicle. A box with the vehicle's true length and width is anchored at
//! that corner and grown in the same inward directions as the fitted box,
//! which restores edges lost to self-occlusion.

use std::f64::consts::{FRAC_PI_2, PI};

use super::lshape::{OrientedRect, CORNER_SIGNS};
use crate::geometry::{wrap_angle, Point2, Pose2D};
use crate::measurement::VehicleSpec;

/// Cost differences at or below this count as a tie.
const ASSIGNMENT_TIE_EPS: f64 = 1e-9;

/// Fitted corner nearest to `sensor_xy`, lowest index on ties.
pub fn select_alignment_point(rect: &OrientedRect, sensor_xy: Point2) -> (Point2, usize) {
    let corners = rect.corners();
    let mut best = 0;
    let mut best_d = corners[0].distance(&sensor_xy);
    for (i, c) in corners.iter().enumerate().skip(1) {
        let d = c.distance(&sensor_xy);
        if d < best_d {
            best = i;
            best_d = d;
        }
    }
    (corners[best], best)
}

/// Extent below which a fitted side counts as unobserved.
const THIN_EXTENT: f64 = 1e-6;

/// For a rectangle that is flat along one axis (a single visible face), the
/// corners on either side of that axis coincide, so the nearest-corner rule
/// cannot tell which way is inward. Picks the sensor side, so the refined box
/// grows away from the sensor.
pub fn orient_thin_axes(rect: &OrientedRect, alignment: (Point2, usize), sensor_xy: Point2) -> (Point2, usize) {
    let (mut s1, mut s2) = CORNER_SIGNS[alignment.1 % 4];
    let (dx, dy) = (sensor_xy.x - rect.center.x, sensor_xy.y - rect.center.y);
    let toward = |e: Point2| if dx * e.x + dy * e.y >= 0.0 { 1.0 } else { -1.0 };
    if rect.extent_e1 <= THIN_EXTENT {
        s1 = toward(rect.e1());
    }
    if rect.extent_e2 <= THIN_EXTENT {
        s2 = toward(rect.e2());
    }
    let idx = CORNER_SIGNS
        .iter()
        .position(|&c| c == (s1, s2))
        .expect("all sign pairs present");
    (rect.corners()[idx], idx)
}

/// A single visible face is seen end to end, so both of its ends are cut
/// short by azimuth sampling alike. Centering along the face splits that
/// loss instead of inheriting it all from one corner. Other rectangles are
/// returned unchanged.
pub fn center_on_face(rect: &OrientedRect, pose: Pose2D) -> Pose2D {
    let face = match (rect.extent_e1 <= THIN_EXTENT, rect.extent_e2 <= THIN_EXTENT) {
        (false, true) => rect.e1(),
        (true, false) => rect.e2(),
        _ => return pose,
    };
    let shift = (rect.center.x - pose.x) * face.x + (rect.center.y - pose.y) * face.y;
    Pose2D::new(pose.x + shift * face.x, pose.y + shift * face.y, pose.yaw)
}

/// Distance between two undirected axes, in [0, π/2].
fn axis_gap(a: f64, b: f64) -> f64 {
    let d = wrap_angle(a - b).abs();
    d.min(PI - d)
}

/// Whether the vehicle length runs along the rectangle's e1 axis.
pub fn length_on_e1(rect: &OrientedRect, spec: &VehicleSpec, prior_heading: Option<f64>) -> bool {
    let (l, w) = (spec.length, spec.width);
    let cost_e1 = (rect.extent_e1 - l).abs() + (rect.extent_e2 - w).abs();
    let cost_e2 = (rect.extent_e1 - w).abs() + (rect.extent_e2 - l).abs();
    if (cost_e1 - cost_e2).abs() > ASSIGNMENT_TIE_EPS {
        return cost_e1 < cost_e2;
    }
    // Both fitted extents at or below the width leave the L1 cost flat; the
    // previous heading decides which axis is longitudinal.
    if let Some(prior) = prior_heading {
        let g1 = axis_gap(rect.heading, prior);
        let g2 = axis_gap(rect.heading + FRAC_PI_2, prior);
        if g1 != g2 {
            return g1 < g2;
        }
    }
    rect.extent_e1 >= rect.extent_e2
}

/// Refined planar pose of the vehicle's footprint center.
///
/// `prior_heading` picks both the longitudinal axis on assignment ties and
/// the forward direction along it; without it the raw axis angle is used.
pub fn refine_with_dimensions(
    rect: &OrientedRect,
    spec: &VehicleSpec,
    alignment: (Point2, usize),
    prior_heading: Option<f64>,
) -> Pose2D {
    let (corner, index) = alignment;
    let (s1, s2) = CORNER_SIGNS[index % 4];
    let e1 = rect.e1();
    let e2 = rect.e2();
    let l_on_e1 = length_on_e1(rect, spec, prior_heading);
    let (d1, d2) = if l_on_e1 {
        (spec.length, spec.width)
    } else {
        (spec.width, spec.length)
    };
    // inward from a corner is opposite to that corner's offset from the center
    let cx = corner.x - s1 * d1 / 2.0 * e1.x - s2 * d2 / 2.0 * e2.x;
    let cy = corner.y - s1 * d1 / 2.0 * e1.y - s2 * d2 / 2.0 * e2.y;

    let axis = if l_on_e1 {
        rect.heading
    } else {
        rect.heading + FRAC_PI_2
    };
    let yaw = match prior_heading {
        Some(prior) if wrap_angle(axis - prior).abs() > FRAC_PI_2 => axis + PI,
        _ => axis,
    };
    Pose2D::new(cx, cy, yaw)
}

/// Rectangle with the vehicle's exact dimensions implied by a refined pose.
pub fn refined_rect(pose: &Pose2D, spec: &VehicleSpec) -> OrientedRect {
    let h = pose.yaw.rem_euclid(PI);
    let (heading, a, b) = if h < FRAC_PI_2 {
        (h, spec.length, spec.width)
    } else {
        (h - FRAC_PI_2, spec.width, spec.length)
    };
    OrientedRect {
        center: pose.position(),
        heading,
        extent_e1: a,
        extent_e2: b,
    }
}
