//! Winding numbers of closed piecewise-cubic curves.
//!
//! Each segment contributes like its chord `p0 -> p3` as long as the query point
//! lies outside the segment's control-point bounding box (the segment can be
//! deformed into the chord without sweeping over the point). Otherwise the
//! segment is halved and both halves are treated the same way.

use thiserror::Error;

use crate::geom::{ClosedCurve, CubicSegment, Point2};
use crate::predicates::{orient2d, Orientation};

/// Recursion stops once a piece's control box is this small relative to the curve.
pub const DEPTH_REL_DIAGONAL: f64 = 1e-13;
/// Hard cap on halvings, far beyond what the relative threshold needs.
pub const MAX_DEPTH: u32 = 200;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum WindingError {
    #[error("query point lies on the curve")]
    OnBoundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FillRule {
    #[default]
    NonZero,
    EvenOdd,
}

impl FillRule {
    pub fn includes(self, winding: i32) -> bool {
        match self {
            FillRule::NonZero => winding != 0,
            FillRule::EvenOdd => winding.rem_euclid(2) == 1,
        }
    }
}

/// Contribution of the edge `p -> q` to the winding number about `z`, counting
/// crossings of the horizontal ray from `z` toward `+x`.
pub fn straight_contribution(p: Point2, q: Point2, z: Point2) -> Result<i32, WindingError> {
    let o = orient2d(p, q, z);
    if o == Orientation::Colinear {
        let within = z.x >= p.x.min(q.x) && z.x <= p.x.max(q.x) && z.y >= p.y.min(q.y) && z.y <= p.y.max(q.y);
        if within {
            return Err(WindingError::OnBoundary);
        }
    }
    if p.y <= z.y {
        if q.y > z.y && o == Orientation::CounterClockwise {
            return Ok(1);
        }
    } else if q.y <= z.y && o == Orientation::Clockwise {
        return Ok(-1);
    }
    Ok(0)
}

fn contribution(seg: &CubicSegment, z: Point2, depth: u32, min_diag: f64) -> Result<i32, WindingError> {
    if seg.is_null() {
        return if seg.p0 == z { Err(WindingError::OnBoundary) } else { Ok(0) };
    }
    let bb = seg.control_bbox();
    if !bb.contains(z) || seg.is_straight() {
        return straight_contribution(seg.p0, seg.p3, z);
    }
    if depth == 0 || bb.diagonal() < min_diag {
        // The piece has shrunk to rounding size around z.
        return Err(WindingError::OnBoundary);
    }
    let (l, r) = seg.split_half();
    Ok(contribution(&l, z, depth - 1, min_diag)? + contribution(&r, z, depth - 1, min_diag)?)
}

/// Winding contribution of one cubic segment about `z`, subdividing at most
/// `depth` times. The machine-precision cutoff is taken relative to the segment
/// itself; [`winding_number`] uses the whole curve's size instead.
pub fn curved_contribution(seg: &CubicSegment, z: Point2, depth: u32) -> Result<i32, WindingError> {
    let min_diag = DEPTH_REL_DIAGONAL * seg.control_bbox().diagonal();
    contribution(seg, z, depth, min_diag)
}

pub fn winding_number(curve: &ClosedCurve, z: Point2) -> Result<i32, WindingError> {
    let min_diag = DEPTH_REL_DIAGONAL * curve.control_bbox().diagonal();
    let mut w = 0;
    for seg in curve.segments() {
        w += contribution(seg, z, MAX_DEPTH, min_diag)?;
    }
    Ok(w)
}

/// Total winding number of a set of curves about `z`.
pub fn total_winding(curves: &[ClosedCurve], z: Point2) -> Result<i32, WindingError> {
    curves.iter().map(|c| winding_number(c, z)).sum()
}

/// Inside test for a set of curves under `rule`.
pub fn inside(curves: &[ClosedCurve], z: Point2, rule: FillRule) -> Result<bool, WindingError> {
    Ok(rule.includes(total_winding(curves, z)?))
}

/// Inside test for a single curve under the nonzero rule; boundary points count as outside.
pub fn strictly_inside(curve: &ClosedCurve, z: Point2) -> bool {
    matches!(winding_number(curve, z), Ok(w) if w != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(ccw: bool) -> ClosedCurve {
        let sq = ClosedCurve::polygon(&[
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        if ccw {
            sq
        } else {
            sq.reversed()
        }
    }

    fn quarter() -> CubicSegment {
        let a = 4.0 / 3.0 * (2f64.sqrt() - 1.0);
        CubicSegment::new(Point2::new(1.0, 0.0), Point2::new(1.0, a), Point2::new(a, 1.0), Point2::new(0.0, 1.0))
    }

    /// Independent crossing-number oracle on a flattened segment.
    fn flattened(seg: &CubicSegment, z: Point2, chords: usize) -> i32 {
        let mut w = 0;
        for k in 0..chords {
            let p = seg.eval(k as f64 / chords as f64);
            let q = seg.eval((k + 1) as f64 / chords as f64);
            let side = (q.x - p.x) * (z.y - p.y) - (z.x - p.x) * (q.y - p.y);
            if p.y <= z.y && q.y > z.y && side > 0.0 {
                w += 1;
            } else if p.y > z.y && q.y <= z.y && side < 0.0 {
                w -= 1;
            }
        }
        w
    }

    #[test]
    fn straight_conventions() {
        let z = Point2::ORIGIN;
        assert_eq!(straight_contribution(Point2::new(1.0, -1.0), Point2::new(1.0, 1.0), z), Ok(1));
        assert_eq!(straight_contribution(Point2::new(1.0, 1.0), Point2::new(1.0, -1.0), z), Ok(-1));
        assert_eq!(straight_contribution(Point2::new(-2.0, -1.0), Point2::new(-2.0, 1.0), z), Ok(0));
        assert_eq!(
            straight_contribution(Point2::new(-1.0, 0.0), Point2::new(1.0, 0.0), z),
            Err(WindingError::OnBoundary)
        );
    }

    #[test]
    fn quarter_arc_matches_flattening() {
        let seg = quarter();
        for z in [Point2::ORIGIN, Point2::new(0.7, 0.7), Point2::new(0.72, 0.72), Point2::new(0.9, 0.2)] {
            assert_eq!(curved_contribution(&seg, z, 64).unwrap(), flattened(&seg, z, 1024), "z = {z:?}");
        }
    }

    #[test]
    fn far_point_uses_chord() {
        let seg = quarter();
        let z = Point2::new(100.0, 100.0);
        assert_eq!(curved_contribution(&seg, z, 64), straight_contribution(seg.p0, seg.p3, z));
    }

    #[test]
    fn squares() {
        assert_eq!(winding_number(&square(true), Point2::new(0.5, 0.5)), Ok(1));
        assert_eq!(winding_number(&square(true), Point2::new(2.0, 2.0)), Ok(0));
        assert_eq!(winding_number(&square(false), Point2::new(0.5, 0.5)), Ok(-1));
        assert_eq!(winding_number(&square(true), Point2::new(1.0, 0.5)), Err(WindingError::OnBoundary));
        assert_eq!(winding_number(&square(true), Point2::new(1.0, 1.0)), Err(WindingError::OnBoundary));
    }

    #[test]
    fn point_on_curved_segment_is_boundary() {
        let seg = quarter();
        let curve = ClosedCurve::new(vec![
            seg,
            CubicSegment::line(seg.p3, Point2::ORIGIN),
            CubicSegment::line(Point2::ORIGIN, seg.p0),
        ])
        .unwrap();
        assert_eq!(winding_number(&curve, seg.eval(0.5)), Err(WindingError::OnBoundary));
    }

    #[test]
    fn annulus_nonzero() {
        let outer = square(true).map(|p| p * 4.0);
        let hole = square(false).map(|p| p + Point2::new(1.5, 1.5));
        let set = [outer, hole];
        assert_eq!(inside(&set, Point2::new(0.5, 0.5), FillRule::NonZero), Ok(true));
        assert_eq!(inside(&set, Point2::new(2.0, 2.0), FillRule::NonZero), Ok(false));
        assert_eq!(inside(&set, Point2::new(2.0, 2.0), FillRule::EvenOdd), Ok(false));
        assert!(FillRule::EvenOdd.includes(-1));
    }
}
