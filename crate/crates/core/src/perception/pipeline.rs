use super::background::{
    filter_foreground, select_lfa_points, BackgroundIndex, DEFAULT_HEIGHT_CUTOFF,
    DEFAULT_MATCH_THRESHOLD, DEFAULT_POINT_CAP, DEFAULT_ROI_RADIUS,
};
use super::lshape::{fit_lshape, fit_segment, OrientedRect, DEFAULT_ANGLE_STEP_DEG};
use super::refine::{center_on_face, orient_thin_axes, refine_with_dimensions, select_alignment_point};
use crate::covariance::CovarianceSpec;
use crate::geometry::{MountPose, Point2, Pose2D, PointCloud};
use crate::measurement::{PoseMeasurement, Source, VehicleSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerceptionParams {
    pub match_threshold: f64,
    pub roi_radius: f64,
    pub height_cutoff: f64,
    pub point_cap: usize,
    pub angle_step: f64,
    pub ground_z: f64,
}

impl Default for PerceptionParams {
    fn default() -> Self {
        Self {
            match_threshold: DEFAULT_MATCH_THRESHOLD,
            roi_radius: DEFAULT_ROI_RADIUS,
            height_cutoff: DEFAULT_HEIGHT_CUTOFF,
            point_cap: DEFAULT_POINT_CAP,
            angle_step: DEFAULT_ANGLE_STEP_DEG.to_radians(),
            ground_z: 0.0,
        }
    }
}

/// Everything an RSU holds between frames. Read-only once built.
#[derive(Debug, Clone)]
pub struct RsuContext {
    pub index: BackgroundIndex,
    pub mount: MountPose,
    pub vehicle: VehicleSpec,
    pub effective_range: f64,
    /// Horizontal standard deviation the RSU reports.
    pub sigma_xy: f64,
    pub params: PerceptionParams,
}

/// A roadside pose estimate plus pipeline diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct RsuMeasurement {
    pub measurement: PoseMeasurement,
    /// Map frame.
    pub alignment_corner: Point2,
    /// Sensor frame.
    pub raw_rect: OrientedRect,
    pub lfa_point_count: usize,
}

/// What the vehicle-side estimate tells the RSU for this frame.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct FrameHint {
    /// Last known vehicle pose (map frame); centers the background ROI.
    pub ref_position: Option<Pose2D>,
    /// Previous heading estimate, used to disambiguate the fitted axes.
    pub prior_heading: Option<f64>,
}

/// Runs background filtering, point selection, L-shape fitting and
/// dimension refinement on one sensor-frame scan. `None` when the reference
/// position is out of range or nothing usable was detected.
pub fn estimate_vehicle_pose(
    frame: &PointCloud,
    ctx: &RsuContext,
    hint: &FrameHint,
) -> Option<RsuMeasurement> {
    let p = &ctx.params;
    let (roi_center, roi_radius) = match hint.ref_position {
        Some(r) => {
            if ctx.mount.pose.planar_distance(&r) > ctx.effective_range {
                return None;
            }
            (ctx.mount.pose.inverse_transform_point(r.position()), p.roi_radius)
        }
        None => (Point2::new(0.0, 0.0), ctx.effective_range),
    };

    let fg = filter_foreground(&ctx.index, frame, roi_center, roi_radius, p.match_threshold);
    // heights are measured in the map frame; planar work stays in the sensor frame
    let lifted: Vec<_> = fg
        .points
        .iter()
        .map(|q| crate::geometry::Point3::new(q.x, q.y, q.z + ctx.mount.height))
        .collect();
    let pts = select_lfa_points(&lifted, p.ground_z, p.height_cutoff, p.point_cap)?;
    // a single visible face gives exactly collinear points in noise-free scans
    let rect = fit_lshape(&pts, p.angle_step)
        .or_else(|_| fit_segment(&pts))
        .ok()?;

    let sensor = Point2::new(0.0, 0.0);
    let alignment = orient_thin_axes(&rect, select_alignment_point(&rect, sensor), sensor);
    let prior = hint.prior_heading.map(|h| h - ctx.mount.pose.yaw);
    let local = center_on_face(&rect, refine_with_dimensions(&rect, &ctx.vehicle, alignment, prior));
    let pose = ctx.mount.pose.compose(&local);

    let cov = CovarianceSpec::planar(ctx.sigma_xy).ok()?;
    let measurement = PoseMeasurement::new(pose, cov, frame.stamp, Source::Rsu).ok()?;
    Some(RsuMeasurement {
        measurement,
        alignment_corner: ctx.mount.pose.transform_point(alignment.0),
        raw_rect: rect,
        lfa_point_count: pts.len(),
    })
}
