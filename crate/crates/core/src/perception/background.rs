//! Reference-frame background subtraction and LFA point selection.

use super::kdtree::KdTree;
use crate::error::{Error, Result};
use crate::geometry::{Point2, Point3, PointCloud};

pub const DEFAULT_MATCH_THRESHOLD: f64 = 0.15;
pub const DEFAULT_ROI_RADIUS: f64 = 10.0;
pub const DEFAULT_HEIGHT_CUTOFF: f64 = 0.8;
pub const DEFAULT_POINT_CAP: usize = 500;
pub const MIN_LFA_POINTS: usize = 10;

/// Nearest-neighbor index over a vehicle-free reference scan (sensor frame).
#[derive(Debug, Clone)]
pub struct BackgroundIndex {
    frame_id: String,
    tree: KdTree,
}

impl BackgroundIndex {
    pub fn frame_id(&self) -> &str {
        &self.frame_id
    }

    pub fn nearest_distance(&self, p: &Point3) -> f64 {
        self.tree
            .nearest_distance(p)
            .expect("index is never empty")
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }
}

pub fn build_background_index(reference: &PointCloud) -> Result<BackgroundIndex> {
    if reference.is_empty() {
        return Err(Error::InvalidInput("reference frame has no points".into()));
    }
    Ok(BackgroundIndex {
        frame_id: reference.frame_id.clone(),
        tree: KdTree::build(&reference.points),
    })
}

/// Keeps points inside the horizontal ROI disc that have no reference point
/// within `match_threshold`. Everything outside the ROI counts as background.
pub fn filter_foreground(
    index: &BackgroundIndex,
    current: &PointCloud,
    roi_center: Point2,
    roi_radius: f64,
    match_threshold: f64,
) -> PointCloud {
    let r2 = roi_radius * roi_radius;
    let t2 = match_threshold * match_threshold;
    let points = current
        .points
        .iter()
        .filter(|p| {
            let dx = p.x - roi_center.x;
            let dy = p.y - roi_center.y;
            dx * dx + dy * dy <= r2
        })
        .filter(|p| {
            index
                .tree
                .nearest_distance_squared(p)
                .is_some_and(|d2| d2 > t2)
        })
        .copied()
        .collect();
    PointCloud {
        frame_id: current.frame_id.clone(),
        stamp: current.stamp,
        points,
    }
}

/// Keeps points lower than `height_cutoff` above the ground, then at most
/// `cap` of the lowest ones (stable on ties), projected to the plane.
/// Returns `None` when fewer than [`MIN_LFA_POINTS`] survive.
pub fn select_lfa_points(
    fg_map: &[Point3],
    ground_z: f64,
    height_cutoff: f64,
    cap: usize,
) -> Option<Vec<Point2>> {
    let mut kept: Vec<&Point3> = fg_map
        .iter()
        .filter(|p| p.z - ground_z < height_cutoff)
        .collect();
    if kept.len() > cap {
        kept.sort_by(|a, b| a.z.total_cmp(&b.z));
        kept.truncate(cap);
    }
    if kept.len() < MIN_LFA_POINTS {
        return None;
    }
    Some(kept.into_iter().map(Point3::xy).collect())
}
