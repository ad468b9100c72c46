//! Static 3-D k-d tree with exact nearest-neighbor queries.
//!
//! The tree is stored implicitly: the point permutation is arranged so the
//! median of every subrange is its node, and `split_axis[m]` records the axis
//! that node splits on. Splits use the axis of largest spread, which keeps
//! the tree balanced on flat, ground-dominated scans.

use crate::geometry::Point3;

#[derive(Debug, Clone)]
pub struct KdTree {
    points: Vec<[f64; 3]>,
    split_axis: Vec<u8>,
}

impl KdTree {
    pub fn build(points: &[Point3]) -> Self {
        let mut pts: Vec<[f64; 3]> = points.iter().map(|p| [p.x, p.y, p.z]).collect();
        let mut split_axis = vec![0u8; pts.len()];
        build_range(&mut pts, &mut split_axis, 0, points.len());
        Self {
            points: pts,
            split_axis,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Exact squared distance to the nearest stored point, `None` if empty.
    pub fn nearest_distance_squared(&self, q: &Point3) -> Option<f64> {
        if self.points.is_empty() {
            return None;
        }
        let q = [q.x, q.y, q.z];
        let mut best = f64::INFINITY;
        self.search(&q, 0, self.points.len(), &mut best);
        Some(best)
    }

    pub fn nearest_distance(&self, q: &Point3) -> Option<f64> {
        self.nearest_distance_squared(q).map(f64::sqrt)
    }

    fn search(&self, q: &[f64; 3], lo: usize, hi: usize, best: &mut f64) {
        if lo >= hi {
            return;
        }
        let mid = lo + (hi - lo) / 2;
        let p = &self.points[mid];
        let (dx, dy, dz) = (p[0] - q[0], p[1] - q[1], p[2] - q[2]);
        let d2 = dx * dx + dy * dy + dz * dz;
        if d2 < *best {
            *best = d2;
        }
        let axis = self.split_axis[mid] as usize;
        let diff = q[axis] - p[axis];
        let (first, second) = if diff < 0.0 {
            ((lo, mid), (mid + 1, hi))
        } else {
            ((mid + 1, hi), (lo, mid))
        };
        self.search(q, first.0, first.1, best);
        if diff * diff < *best {
            self.search(q, second.0, second.1, best);
        }
    }
}

fn build_range(pts: &mut [[f64; 3]], axes: &mut [u8], lo: usize, hi: usize) {
    if hi - lo <= 1 {
        return;
    }
    let slice = &mut pts[lo..hi];
    let mut min = [f64::INFINITY; 3];
    let mut max = [f64::NEG_INFINITY; 3];
    for p in slice.iter() {
        for a in 0..3 {
            min[a] = min[a].min(p[a]);
            max[a] = max[a].max(p[a]);
        }
    }
    let axis = (0..3)
        .max_by(|&a, &b| (max[a] - min[a]).total_cmp(&(max[b] - min[b])))
        .unwrap_or(0);
    let k = (hi - lo) / 2;
    slice.select_nth_unstable_by(k, |a, b| a[axis].total_cmp(&b[axis]));
    let mid = lo + k;
    axes[mid] = axis as u8;
    build_range(pts, axes, lo, mid);
    build_range(pts, axes, mid + 1, hi);
}
