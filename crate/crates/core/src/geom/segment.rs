use super::point::{Point2, Rect};
use super::GeomError;
use crate::predicates::{orient2d, Orientation};
use crate::roots;

/// Planar cubic Bézier segment with control points `p0..p3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicSegment {
    pub p0: Point2,
    pub p1: Point2,
    pub p2: Point2,
    pub p3: Point2,
}

impl CubicSegment {
    pub const fn new(p0: Point2, p1: Point2, p2: Point2, p3: Point2) -> Self {
        Self { p0, p1, p2, p3 }
    }

    /// Straight segment from `a` to `b` with interior control points at 1/3 and 2/3.
    pub fn line(a: Point2, b: Point2) -> Self {
        Self::new(a, a.lerp(b, 1.0 / 3.0), a.lerp(b, 2.0 / 3.0), b)
    }

    /// Null segment: four identical control points.
    pub const fn null(p: Point2) -> Self {
        Self::new(p, p, p, p)
    }

    pub fn points(&self) -> [Point2; 4] {
        [self.p0, self.p1, self.p2, self.p3]
    }

    pub fn from_points(p: [Point2; 4]) -> Self {
        Self::new(p[0], p[1], p[2], p[3])
    }

    pub fn is_finite(&self) -> bool {
        self.points().iter().all(|p| p.is_finite())
    }

    pub fn is_null(&self) -> bool {
        self.p0 == self.p1 && self.p0 == self.p2 && self.p0 == self.p3
    }

    /// Exact straightness: colinear control points in index order, distinct ends.
    pub fn is_straight(&self) -> bool {
        if self.p0 == self.p3 {
            return false;
        }
        if orient2d(self.p0, self.p3, self.p1) != Orientation::Colinear
            || orient2d(self.p0, self.p3, self.p2) != Orientation::Colinear
        {
            return false;
        }
        let d = self.p3 - self.p0;
        let s1 = (self.p1 - self.p0).dot(d);
        let s2 = (self.p2 - self.p0).dot(d);
        let s3 = d.dot(d);
        0.0 <= s1 && s1 <= s2 && s2 <= s3
    }

    /// Straightness up to a tolerance relative to the chord length.
    pub fn is_nearly_straight(&self, rel_tol: f64) -> bool {
        let d = self.p3 - self.p0;
        let len = d.norm();
        if len == 0.0 {
            return false;
        }
        let off = |p: Point2| (p - self.p0).cross(d).abs() / len;
        off(self.p1) <= rel_tol * len && off(self.p2) <= rel_tol * len
    }

    /// De Casteljau evaluation. `t` is not range-checked.
    pub fn eval(&self, t: f64) -> Point2 {
        let a = self.p0.lerp(self.p1, t);
        let b = self.p1.lerp(self.p2, t);
        let c = self.p2.lerp(self.p3, t);
        let ab = a.lerp(b, t);
        let bc = b.lerp(c, t);
        ab.lerp(bc, t)
    }

    pub fn eval_checked(&self, t: f64) -> Result<Point2, GeomError> {
        if !(0.0..=1.0).contains(&t) {
            return Err(GeomError::ParameterOutOfRange(t));
        }
        Ok(self.eval(t))
    }

    /// First derivative.
    pub fn derivative(&self, t: f64) -> Point2 {
        let d0 = self.p1 - self.p0;
        let d1 = self.p2 - self.p1;
        let d2 = self.p3 - self.p2;
        let s = 1.0 - t;
        (d0 * (s * s) + d1 * (2.0 * s * t) + d2 * (t * t)) * 3.0
    }

    /// Tangent direction at `t`, falling back to higher-order control differences
    /// where the derivative vanishes (cusps, coincident control points).
    pub fn tangent(&self, t: f64) -> Option<Point2> {
        let d = self.derivative(t);
        if d != Point2::ORIGIN {
            return d.normalized();
        }
        if t <= 0.5 {
            [self.p1 - self.p0, self.p2 - self.p0, self.p3 - self.p0]
                .into_iter()
                .find(|v| *v != Point2::ORIGIN)
                .and_then(Point2::normalized)
        } else {
            [self.p3 - self.p2, self.p3 - self.p1, self.p3 - self.p0]
                .into_iter()
                .find(|v| *v != Point2::ORIGIN)
                .and_then(Point2::normalized)
        }
    }

    /// Unit tangent direction entering `p0`.
    pub fn start_tangent(&self) -> Option<Point2> {
        [self.p1 - self.p0, self.p2 - self.p0, self.p3 - self.p0]
            .into_iter()
            .find(|v| *v != Point2::ORIGIN)
            .and_then(Point2::normalized)
    }

    /// Unit tangent direction arriving at `p3`.
    pub fn end_tangent(&self) -> Option<Point2> {
        [self.p3 - self.p2, self.p3 - self.p1, self.p3 - self.p0]
            .into_iter()
            .find(|v| *v != Point2::ORIGIN)
            .and_then(Point2::normalized)
    }

    /// De Casteljau subdivision at `t` in the open interval (0, 1).
    pub fn split(&self, t: f64) -> Result<(CubicSegment, CubicSegment), GeomError> {
        if !(t > 0.0 && t < 1.0) {
            return Err(GeomError::DegenerateSplit(t));
        }
        Ok(self.split_unchecked(t))
    }

    pub(crate) fn split_unchecked(&self, t: f64) -> (CubicSegment, CubicSegment) {
        let a = self.p0.lerp(self.p1, t);
        let b = self.p1.lerp(self.p2, t);
        let c = self.p2.lerp(self.p3, t);
        let ab = a.lerp(b, t);
        let bc = b.lerp(c, t);
        let m = ab.lerp(bc, t);
        (CubicSegment::new(self.p0, a, ab, m), CubicSegment::new(m, bc, c, self.p3))
    }

    pub fn split_half(&self) -> (CubicSegment, CubicSegment) {
        self.split_unchecked(0.5)
    }

    /// Portion of the segment between parameters `t0 < t1`.
    pub fn subsegment(&self, t0: f64, t1: f64) -> CubicSegment {
        debug_assert!(t0 <= t1);
        let right = if t0 > 0.0 { self.split_unchecked(t0).1 } else { *self };
        if t1 >= 1.0 {
            return right;
        }
        let local = if t0 > 0.0 { (t1 - t0) / (1.0 - t0) } else { t1 };
        if local <= 0.0 {
            return CubicSegment::null(right.p0);
        }
        right.split_unchecked(local).0
    }

    pub fn reversed(&self) -> CubicSegment {
        CubicSegment::new(self.p3, self.p2, self.p1, self.p0)
    }

    pub fn map(&self, f: impl Fn(Point2) -> Point2) -> CubicSegment {
        CubicSegment::new(f(self.p0), f(self.p1), f(self.p2), f(self.p3))
    }

    /// Componentwise min/max of the four control points.
    pub fn control_bbox(&self) -> Rect {
        Rect::from_points(self.points())
    }

    /// Tight bounding box from the endpoints and the interior extrema of each coordinate.
    pub fn bbox(&self) -> Rect {
        let mut r = Rect::from_points([self.p0, self.p3]);
        for axis in 0..2 {
            let c = |p: Point2| if axis == 0 { p.x } else { p.y };
            let d0 = c(self.p1) - c(self.p0);
            let d1 = c(self.p2) - c(self.p1);
            let d2 = c(self.p3) - c(self.p2);
            // derivative / 3 = (d0 - 2 d1 + d2) t^2 + 2 (d1 - d0) t + d0
            let coeffs = [d0, 2.0 * (d1 - d0), d0 - 2.0 * d1 + d2];
            if let Ok(ts) = roots::solve_quadratic(&coeffs) {
                for t in ts.into_iter().filter(|t| *t > 0.0 && *t < 1.0) {
                    r.include(self.eval(t));
                }
            }
        }
        r
    }

    /// Contribution of this segment to the signed area of a closed curve,
    /// `1/2 ∫ (x dy - y dx)`, exact for cubics (3-point Gauss-Legendre on a quintic).
    pub fn area_term(&self) -> f64 {
        const NODES: [(f64, f64); 3] = [
            (0.112_701_665_379_258_31, 5.0 / 18.0),
            (0.5, 8.0 / 18.0),
            (0.887_298_334_620_741_7, 5.0 / 18.0),
        ];
        let mut acc = 0.0;
        for (t, w) in NODES {
            let p = self.eval(t);
            let d = self.derivative(t);
            acc += w * (p.x * d.y - p.y * d.x);
        }
        0.5 * acc
    }

    /// Length of the control polygon, an upper bound on arc length.
    pub fn control_length(&self) -> f64 {
        self.p0.distance(self.p1) + self.p1.distance(self.p2) + self.p2.distance(self.p3)
    }

    /// Approximate arc length by chord sampling.
    pub fn approx_length(&self, samples: usize) -> f64 {
        let n = samples.max(1);
        let mut prev = self.p0;
        let mut len = 0.0;
        for k in 1..=n {
            let p = self.eval(k as f64 / n as f64);
            len += prev.distance(p);
            prev = p;
        }
        len
    }
}

/// Checked evaluation of a segment at `t`.
pub fn eval_segment(seg: &CubicSegment, t: f64) -> Result<Point2, GeomError> {
    seg.eval_checked(t)
}

/// Checked de Casteljau split of a segment at `t`.
pub fn split_segment(seg: &CubicSegment, t: f64) -> Result<(CubicSegment, CubicSegment), GeomError> {
    seg.split(t)
}
