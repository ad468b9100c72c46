use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point2, Pose2D};

/// Polyline road parameterized by arc length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct Road {
    points: Vec<Point2>,
    cumulative: Vec<f64>,
}

impl TryFrom<Vec<[f64; 2]>> for Road {
    type Error = Error;

    fn try_from(v: Vec<[f64; 2]>) -> Result<Self> {
        Road::new(v.into_iter().map(|[x, y]| Point2::new(x, y)).collect())
    }
}

impl From<Road> for Vec<[f64; 2]> {
    fn from(r: Road) -> Self {
        r.points.iter().map(|p| [p.x, p.y]).collect()
    }
}

impl Road {
    pub fn new(points: Vec<Point2>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::config("road.points", "need at least two vertices"));
        }
        let mut cumulative = vec![0.0];
        for w in points.windows(2) {
            let d = w[0].distance(&w[1]);
            if !(d > 0.0 && d.is_finite()) {
                return Err(Error::config("road.points", "consecutive vertices must differ"));
            }
            cumulative.push(cumulative.last().unwrap() + d);
        }
        Ok(Self { points, cumulative })
    }

    pub fn straight(length: f64) -> Self {
        Self::new(vec![Point2::new(0.0, 0.0), Point2::new(length, 0.0)]).expect("valid")
    }

    pub fn length(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    /// Pose on the centerline at arc length `s` (clamped to the road),
    /// facing along the road.
    pub fn pose_at(&self, s: f64) -> Pose2D {
        let s = s.clamp(0.0, self.length());
        let seg = match self.cumulative.iter().rposition(|&c| c <= s) {
            Some(i) if i + 1 < self.points.len() => i,
            _ => self.points.len() - 2,
        };
        let a = self.points[seg];
        let b = self.points[seg + 1];
        let len = self.cumulative[seg + 1] - self.cumulative[seg];
        let u = (s - self.cumulative[seg]) / len;
        Pose2D::new(
            a.x + u * (b.x - a.x),
            a.y + u * (b.y - a.y),
            (b.y - a.y).atan2(b.x - a.x),
        )
    }

    /// Arc-length interval over which the centerline stays within `range` of
    /// `center` (horizontal distance), sampled every `step` meters.
    pub fn coverage_interval(&self, center: Point2, range: f64, step: f64) -> Option<(f64, f64)> {
        let n = (self.length() / step).ceil() as usize;
        let mut entry = None;
        let mut exit = None;
        for i in 0..=n {
            let s = (i as f64 * step).min(self.length());
            if self.pose_at(s).position().distance(&center) <= range {
                entry.get_or_insert(s);
                exit = Some(s);
            }
        }
        entry.zip(exit)
    }
}
