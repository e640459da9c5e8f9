//! Planar and 3D Bézier primitives: points, cubic segments, closed curves,
//! bicubic patches, bounding boxes and curve/line intersection search.

mod curve;
mod intersect;
mod patch;
mod point;
mod segment;
mod transform;

pub use curve::{subpath, refine_midpoints, ClosedCurve};
pub use intersect::{
    intersections, segment_pair_intersections, CurveHit, IntersectError, PARAM_DEDUP_TOL, SUBDIVISION_TOL,
};
pub use patch::{subdivide_patch, Patch};
pub use point::{Box3, Point2, Point3, Rect};
pub use transform::Affine3;
pub use segment::{eval_segment, split_segment, CubicSegment};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("parameter {0} outside [0, 1]")]
    ParameterOutOfRange(f64),
    #[error("split parameter {0} must lie strictly inside (0, 1)")]
    DegenerateSplit(f64),
    #[error("a closed curve needs at least one segment")]
    EmptyCurve,
    #[error("segment {segment} does not start where the previous one ends")]
    NotClosed { segment: usize },
    #[error("non-finite coordinate in segment {segment}")]
    NonFinite { segment: usize },
    #[error("subpath endpoints must be distinct nodes (got {0} twice)")]
    SameNode(usize),
}
