//! Roadside perception: background subtraction, L-shape fitting and
//! dimension-based refinement.

pub mod background;
pub mod kdtree;
pub mod lshape;
pub mod pipeline;
pub mod refine;

pub use background::{build_background_index, filter_foreground, select_lfa_points, BackgroundIndex};
pub use lshape::{corners, fit_lshape, fit_segment, lshape_criterion, OrientedRect};
pub use pipeline::{estimate_vehicle_pose, FrameHint, PerceptionParams, RsuContext, RsuMeasurement};
pub use refine::{center_on_face, orient_thin_axes, refine_with_dimensions, select_alignment_point};
