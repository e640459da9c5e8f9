use super::intersect::segment_pair_intersections;
use super::point::{Point2, Rect};
use super::segment::CubicSegment;
use super::GeomError;

/// Parameters this close to an integer are snapped onto the node.
const NODE_SNAP: f64 = 1e-12;

/// Closed piecewise-cubic curve. Segment `k` ends exactly (bitwise) where
/// segment `k + 1` starts, and the last segment ends at the first node.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedCurve {
    segments: Vec<CubicSegment>,
}

impl ClosedCurve {
    /// Validates finiteness and exact closure.
    pub fn new(segments: Vec<CubicSegment>) -> Result<Self, GeomError> {
        if segments.is_empty() {
            return Err(GeomError::EmptyCurve);
        }
        for (k, s) in segments.iter().enumerate() {
            if !s.is_finite() {
                return Err(GeomError::NonFinite { segment: k });
            }
        }
        let n = segments.len();
        for k in 0..n {
            let prev = &segments[(k + n - 1) % n];
            if prev.p3 != segments[k].p0 {
                return Err(GeomError::NotClosed { segment: k });
            }
        }
        Ok(Self { segments })
    }

    /// Builds a curve from a chain whose joints may carry rounding noise; each
    /// segment's start is overwritten with the previous segment's end.
    pub(crate) fn from_chain(mut segments: Vec<CubicSegment>) -> Self {
        debug_assert!(!segments.is_empty());
        let n = segments.len();
        for k in 0..n {
            let end = segments[(k + n - 1) % n].p3;
            segments[k].p0 = end;
        }
        Self { segments }
    }

    /// Closed polygon with straight cubic edges.
    pub fn polygon(points: &[Point2]) -> Result<Self, GeomError> {
        if points.is_empty() {
            return Err(GeomError::EmptyCurve);
        }
        let n = points.len();
        let segs = (0..n).map(|k| CubicSegment::line(points[k], points[(k + 1) % n])).collect();
        Self::new(segs)
    }

    pub fn segments(&self) -> &[CubicSegment] {
        &self.segments
    }

    pub fn into_segments(self) -> Vec<CubicSegment> {
        self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// Node `i` (taken modulo the node count): the start of segment `i`.
    pub fn node(&self, i: usize) -> Point2 {
        self.segments[i % self.segments.len()].p0
    }

    pub fn nodes(&self) -> impl Iterator<Item = Point2> + '_ {
        self.segments.iter().map(|s| s.p0)
    }

    /// Signed enclosed area; positive for counterclockwise curves.
    pub fn signed_area(&self) -> f64 {
        self.segments.iter().map(CubicSegment::area_term).sum()
    }

    pub fn is_ccw(&self) -> bool {
        self.signed_area() > 0.0
    }

    pub fn reversed(&self) -> ClosedCurve {
        let segments = self.segments.iter().rev().map(CubicSegment::reversed).collect();
        ClosedCurve { segments }
    }

    /// The same curve, oriented counterclockwise.
    pub fn to_ccw(&self) -> ClosedCurve {
        if self.signed_area() < 0.0 {
            self.reversed()
        } else {
            self.clone()
        }
    }

    pub fn to_cw(&self) -> ClosedCurve {
        if self.signed_area() > 0.0 {
            self.reversed()
        } else {
            self.clone()
        }
    }

    pub fn control_bbox(&self) -> Rect {
        self.segments
            .iter()
            .map(CubicSegment::control_bbox)
            .reduce(|a, b| a.union(&b))
            .expect("non-empty curve")
    }

    pub fn bbox(&self) -> Rect {
        self.segments.iter().map(CubicSegment::bbox).reduce(|a, b| a.union(&b)).expect("non-empty curve")
    }

    pub fn map(&self, f: impl Fn(Point2) -> Point2) -> ClosedCurve {
        ClosedCurve { segments: self.segments.iter().map(|s| s.map(&f)).collect() }
    }

    /// Rotates the node numbering so that node `i` becomes node 0.
    pub fn rotated(&self, i: usize) -> ClosedCurve {
        let n = self.len();
        let i = i % n;
        let mut segments = self.segments[i..].to_vec();
        segments.extend_from_slice(&self.segments[..i]);
        ClosedCurve { segments }
    }

    /// Curve with null segments dropped; `None` if nothing else remains.
    pub fn without_nulls(&self) -> Option<ClosedCurve> {
        let segments: Vec<_> = self.segments.iter().copied().filter(|s| !s.is_null()).collect();
        (!segments.is_empty()).then(|| ClosedCurve::from_chain(segments))
    }

    /// Wraps a parameter in node units (integer part = segment, fraction = local parameter).
    fn locate(&self, param: f64) -> (usize, f64) {
        let n = self.len() as f64;
        let mut p = param.rem_euclid(n);
        if p >= n {
            p = 0.0;
        }
        let k = p.floor();
        (k as usize % self.len(), p - k)
    }

    /// Point at a parameter in node units, wrapping modulo the segment count.
    pub fn point_at(&self, param: f64) -> Point2 {
        let (k, t) = self.locate(param);
        self.segments[k].eval(t)
    }

    pub fn tangent_at(&self, param: f64) -> Option<Point2> {
        let (k, t) = self.locate(param);
        self.segments[k].tangent(t)
    }

    /// Segments covering the parameter range `from .. to` (node units, `to > from`,
    /// `to - from <= len`), splitting the first and last segment as needed.
    pub fn param_subpath(&self, from: f64, to: f64) -> Vec<CubicSegment> {
        const EDGE: f64 = 1e-12;
        debug_assert!(to > from);
        let n = self.len();
        let span = (to - from).min(n as f64);
        let start = from.rem_euclid(n as f64);
        let end = start + span;
        let mut out = Vec::new();
        let mut k = start.floor();
        let mut pos = start;
        while pos < end - EDGE {
            let seg = &self.segments[(k as usize) % n];
            let t0 = pos - k;
            let t1 = (end - k).min(1.0);
            let t0 = if t0 < EDGE { 0.0 } else { t0 };
            let t1 = if t1 > 1.0 - EDGE { 1.0 } else { t1 };
            if t1 - t0 > EDGE {
                out.push(seg.subsegment(t0, t1));
            }
            k += 1.0;
            pos = k;
        }
        out
    }

    /// Inserts nodes at the given parameters (node units). Returns the refined curve
    /// and, for each parameter, the index of the node now sitting there.
    pub fn insert_nodes(&self, params: &[f64]) -> (ClosedCurve, Vec<usize>) {
        let n = self.len();
        let located: Vec<(usize, f64)> = params
            .iter()
            .map(|&p| {
                let p = p.rem_euclid(n as f64);
                let k = p.floor();
                let t = p - k;
                let k = k as usize % n;
                if t < NODE_SNAP {
                    (k, 0.0)
                } else if t > 1.0 - NODE_SNAP {
                    ((k + 1) % n, 0.0)
                } else {
                    (k, t)
                }
            })
            .collect();

        let mut segments = Vec::new();
        let mut node_of = vec![0usize; params.len()];
        for (k, seg) in self.segments().iter().enumerate() {
            let mut cuts: Vec<(f64, Vec<usize>)> = Vec::new();
            for (pi, &(sk, t)) in located.iter().enumerate() {
                if sk != k {
                    continue;
                }
                match cuts.iter_mut().find(|c| c.0 == t) {
                    Some(c) => c.1.push(pi),
                    None => cuts.push((t, vec![pi])),
                }
            }
            cuts.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut rest = *seg;
            let mut consumed = 0.0;
            for (t, who) in cuts {
                if t == 0.0 {
                    for pi in who {
                        node_of[pi] = segments.len();
                    }
                    continue;
                }
                let local = (t - consumed) / (1.0 - consumed);
                let (l, r) = rest.split_unchecked(local);
                segments.push(l);
                for pi in who {
                    node_of[pi] = segments.len();
                }
                rest = r;
                consumed = t;
            }
            segments.push(rest);
        }
        let total = segments.len();
        for v in &mut node_of {
            *v %= total;
        }
        (ClosedCurve { segments }, node_of)
    }

    /// Uniform parameter samples, `per_segment` per segment (segment start included).
    pub fn sample(&self, per_segment: usize) -> Vec<Point2> {
        let m = per_segment.max(1);
        let mut out = Vec::with_capacity(self.len() * m);
        for s in &self.segments {
            for j in 0..m {
                out.push(s.eval(j as f64 / m as f64));
            }
        }
        out
    }

    /// Parameter pairs `(i, ti, j, tj)` where non-adjacent parts of the curve meet.
    /// Contacts at shared nodes of consecutive segments are not reported.
    pub fn self_intersections(&self) -> Vec<(usize, f64, usize, f64)> {
        const NODE_EPS: f64 = 1e-6;
        let compact = match self.without_nulls() {
            Some(c) => c,
            None => return Vec::new(),
        };
        let segs = compact.segments();
        let n = segs.len();
        let scale = compact.control_bbox().diagonal().max(f64::MIN_POSITIVE);
        let mut found = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if !segs[i].control_bbox().overlaps(&segs[j].control_bbox()) {
                    continue;
                }
                let next_of_i = (i + 1) % n == j;
                let next_of_j = (j + 1) % n == i;
                for (ti, tj) in segment_pair_intersections(&segs[i], &segs[j], scale) {
                    if next_of_i && ti > 1.0 - NODE_EPS && tj < NODE_EPS {
                        continue;
                    }
                    if next_of_j && tj > 1.0 - NODE_EPS && ti < NODE_EPS {
                        continue;
                    }
                    found.push((i, ti, j, tj));
                }
            }
        }
        found
    }

    pub fn is_simple(&self) -> bool {
        self.self_intersections().is_empty()
    }
}

/// Segments of `curve` from node `i` forward to node `j` (indices modulo the node count).
pub fn subpath(curve: &ClosedCurve, i: usize, j: usize) -> Result<Vec<CubicSegment>, GeomError> {
    let n = curve.len();
    let (i, j) = (i % n, j % n);
    if i == j {
        return Err(GeomError::SameNode(i));
    }
    let count = (j + n - i) % n;
    Ok((0..count).map(|k| curve.segments[(i + k) % n]).collect())
}

/// Splits every segment at its parametric midpoint.
pub fn refine_midpoints(curve: &ClosedCurve) -> ClosedCurve {
    let mut segments = Vec::with_capacity(curve.len() * 2);
    for s in curve.segments() {
        let (l, r) = s.split_half();
        segments.push(l);
        segments.push(r);
    }
    ClosedCurve { segments }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> ClosedCurve {
        ClosedCurve::polygon(&[
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    fn pentagon() -> ClosedCurve {
        let pts: Vec<_> = (0..5)
            .map(|k| {
                let a = std::f64::consts::TAU * k as f64 / 5.0;
                Point2::new(a.cos(), a.sin())
            })
            .collect();
        ClosedCurve::polygon(&pts).unwrap()
    }

    #[test]
    fn closure_is_validated() {
        let mut segs = square().into_segments();
        segs[2].p0.x += 1e-15;
        assert_eq!(ClosedCurve::new(segs), Err(GeomError::NotClosed { segment: 2 }));
        assert_eq!(ClosedCurve::new(vec![]), Err(GeomError::EmptyCurve));
    }

    #[test]
    fn subpath_counts() {
        let sq = square();
        assert_eq!(subpath(&sq, 0, 2).unwrap().len(), 2);
        let back = subpath(&sq, 2, 0).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0], sq.segments()[2]);
        assert_eq!(subpath(&pentagon(), 0, 3).unwrap().len(), 3);
        assert_eq!(subpath(&sq, 1, 5), Err(GeomError::SameNode(1)));
    }

    #[test]
    fn refine_doubles() {
        let r = refine_midpoints(&square());
        assert_eq!(r.len(), 8);
        assert_eq!(refine_midpoints(&r).len(), 16);
        assert!(ClosedCurve::new(r.segments().to_vec()).is_ok());
    }

    #[test]
    fn area_and_orientation() {
        let sq = square();
        assert!((sq.signed_area() - 1.0).abs() < 1e-15);
        assert!((sq.reversed().signed_area() + 1.0).abs() < 1e-15);
        assert!(sq.reversed().to_ccw().is_ccw());
    }

    #[test]
    fn param_subpath_wraps() {
        let sq = square();
        let arc = sq.param_subpath(3.5, 4.5);
        assert_eq!(arc.len(), 2);
        assert_eq!(arc[0].p0, Point2::new(0.0, 0.5));
        assert_eq!(arc[1].p3, Point2::new(0.5, 0.0));
        let whole = sq.param_subpath(0.0, 4.0);
        assert_eq!(whole, sq.segments().to_vec());
    }

    #[test]
    fn square_is_simple_bowtie_is_not() {
        assert!(square().is_simple());
        let bow = ClosedCurve::polygon(&[
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        assert!(!bow.is_simple());
    }
}
