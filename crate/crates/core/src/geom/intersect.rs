//! Curve / line-segment intersection by recursive subdivision.
//!
//! For a query segment `a -> b`, the signed distance of a cubic to the line and
//! its projection onto the line are themselves cubics whose Bernstein
//! coefficients are the same expressions evaluated at the control points. An
//! interval is discarded once all distance coefficients share a strict sign or
//! the projection coefficients fall outside `[0, 1]`; surviving intervals are
//! halved down to `SUBDIVISION_TOL` and then polished with Newton steps.

use thiserror::Error;

use super::curve::ClosedCurve;
use super::point::Point2;
use super::segment::CubicSegment;

/// Parameter width at which subdivision stops.
pub const SUBDIVISION_TOL: f64 = 1e-10;
/// Hits closer than this in segment parameter are merged.
pub const PARAM_DEDUP_TOL: f64 = 1e-9;

const PROJ_SLACK: f64 = 1e-12;
const CANDIDATE_BUDGET: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntersectError {
    #[error("query segment has coincident endpoints")]
    DegenerateQuery,
    #[error("query segment overlaps curve segment {segment} along a positive length")]
    Overlap { segment: usize },
}

/// One crossing between a closed curve and a query segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveHit {
    /// Curve segment index.
    pub segment: usize,
    /// Parameter on that segment, in `[0, 1)`; nodal hits are reported at `t = 0`
    /// of the segment starting there.
    pub t: f64,
    /// Parameter along the query segment, in `[0, 1]`.
    pub s: f64,
    pub point: Point2,
}

impl CurveHit {
    /// Position in node units.
    pub fn param(&self) -> f64 {
        self.segment as f64 + self.t
    }
}

fn bern_eval(c: &[f64; 4], t: f64) -> f64 {
    let s = 1.0 - t;
    let a = [c[0] * s + c[1] * t, c[1] * s + c[2] * t, c[2] * s + c[3] * t];
    let b = [a[0] * s + a[1] * t, a[1] * s + a[2] * t];
    b[0] * s + b[1] * t
}

fn bern_deriv(c: &[f64; 4], t: f64) -> f64 {
    let d = [c[1] - c[0], c[2] - c[1], c[3] - c[2]];
    let s = 1.0 - t;
    3.0 * (d[0] * s * s + 2.0 * d[1] * s * t + d[2] * t * t)
}

fn bern_split(c: &[f64; 4]) -> ([f64; 4], [f64; 4]) {
    let a = [(c[0] + c[1]) * 0.5, (c[1] + c[2]) * 0.5, (c[2] + c[3]) * 0.5];
    let b = [(a[0] + a[1]) * 0.5, (a[1] + a[2]) * 0.5];
    let m = (b[0] + b[1]) * 0.5;
    ([c[0], a[0], b[0], m], [m, b[1], a[2], c[3]])
}

struct LineQuery {
    a: Point2,
    dir: Point2,
    len2: f64,
}

impl LineQuery {
    fn dist(&self, p: Point2) -> f64 {
        self.dir.cross(p - self.a)
    }

    fn proj(&self, p: Point2) -> f64 {
        self.dir.dot(p - self.a) / self.len2
    }
}

/// Raw hits `(t, s)` of one segment against the query; `Err(())` signals overlap.
fn segment_hits(seg: &CubicSegment, q: &LineQuery) -> Result<Vec<(f64, f64)>, ()> {
    let pts = seg.points();
    let dist = pts.map(|p| q.dist(p));
    let proj = pts.map(|p| q.proj(p));

    // Colinear control polygon: either an overlap or an endpoint touch.
    let reach = pts.iter().map(|p| (*p - q.a).norm()).fold(0.0, f64::max);
    let tol = 1e-13 * q.len2.sqrt() * (q.len2.sqrt() + reach);
    if dist.iter().all(|d| d.abs() <= tol) {
        let lo = proj.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = proj.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let overlap = hi.min(1.0) - lo.max(0.0);
        if overlap > 1e-12 {
            return Err(());
        }
        let mut out = Vec::new();
        for (t, s) in [(0.0, proj[0]), (1.0, proj[3])] {
            if (-PROJ_SLACK..=1.0 + PROJ_SLACK).contains(&s) {
                out.push((t, s.clamp(0.0, 1.0)));
            }
        }
        return Ok(out);
    }

    let mut raw = Vec::new();
    let mut stack = vec![(0.0f64, 1.0f64, dist, proj)];
    while let Some((t0, t1, d, p)) = stack.pop() {
        if d.iter().all(|v| *v > 0.0) || d.iter().all(|v| *v < 0.0) {
            continue;
        }
        if p.iter().all(|v| *v < -PROJ_SLACK) || p.iter().all(|v| *v > 1.0 + PROJ_SLACK) {
            continue;
        }
        if t1 - t0 <= SUBDIVISION_TOL {
            raw.push((t0, t1));
            if raw.len() > CANDIDATE_BUDGET {
                return Err(());
            }
            continue;
        }
        let tm = 0.5 * (t0 + t1);
        let (dl, dr) = bern_split(&d);
        let (pl, pr) = bern_split(&p);
        stack.push((tm, t1, dr, pr));
        stack.push((t0, tm, dl, pl));
    }

    let mut out: Vec<(f64, f64)> = Vec::new();
    for (t0, t1) in raw {
        let mut t = 0.5 * (t0 + t1);
        if t0 == 0.0 && dist[0] == 0.0 {
            t = 0.0;
        } else if t1 == 1.0 && dist[3] == 0.0 {
            t = 1.0;
        } else {
            for _ in 0..3 {
                let f = bern_eval(&dist, t);
                let df = bern_deriv(&dist, t);
                if f == 0.0 || df == 0.0 || !df.is_finite() {
                    break;
                }
                let next = t - f / df;
                if !(next >= 0.0 && next <= 1.0) || (next - t).abs() > 4.0 * SUBDIVISION_TOL {
                    break;
                }
                if bern_eval(&dist, next).abs() > f.abs() {
                    break;
                }
                t = next;
            }
        }
        let s = bern_eval(&proj, t);
        if !(-PARAM_DEDUP_TOL..=1.0 + PARAM_DEDUP_TOL).contains(&s) {
            continue;
        }
        let s = s.clamp(0.0, 1.0);
        match out.last_mut() {
            Some(last) if (t - last.0).abs() <= PARAM_DEDUP_TOL => {}
            _ => out.push((t, s)),
        }
    }
    Ok(out)
}

/// All points where `curve` meets the closed segment `a -> b`, sorted by segment
/// and parameter, with nodal and near-duplicate hits merged.
pub fn intersections(curve: &ClosedCurve, a: Point2, b: Point2) -> Result<Vec<CurveHit>, IntersectError> {
    if a == b {
        return Err(IntersectError::DegenerateQuery);
    }
    let dir = b - a;
    let q = LineQuery { a, dir, len2: dir.dot(dir) };
    let segs = curve.segments();
    let n = segs.len();
    let next_live = |k: usize| (1..=n).map(|d| (k + d) % n).find(|&j| !segs[j].is_null()).unwrap_or(k);

    let mut hits: Vec<CurveHit> = Vec::new();
    for (k, seg) in segs.iter().enumerate() {
        if seg.is_null() {
            continue;
        }
        let bb = seg.control_bbox();
        let qb = super::point::Rect::from_points([a, b]);
        if !bb.overlaps(&qb) {
            continue;
        }
        let raw = segment_hits(seg, &q).map_err(|_| IntersectError::Overlap { segment: k })?;
        for (t, s) in raw {
            if t >= 1.0 - PARAM_DEDUP_TOL {
                let j = next_live(k);
                hits.push(CurveHit { segment: j, t: 0.0, s, point: segs[j].p0 });
            } else if t <= PARAM_DEDUP_TOL {
                hits.push(CurveHit { segment: k, t: 0.0, s, point: seg.p0 });
            } else {
                hits.push(CurveHit { segment: k, t, s, point: seg.eval(t) });
            }
        }
    }
    hits.sort_by(|x, y| x.segment.cmp(&y.segment).then(x.t.total_cmp(&y.t)));
    hits.dedup_by(|x, y| x.segment == y.segment && (x.t - y.t).abs() <= PARAM_DEDUP_TOL);
    Ok(hits)
}

/// Parameter pairs where two cubic segments meet, found by recursive control-box
/// subdivision. `scale` sets the spatial tolerance (typically the curve size).
pub fn segment_pair_intersections(s1: &CubicSegment, s2: &CubicSegment, scale: f64) -> Vec<(f64, f64)> {
    const PARAM_STOP: f64 = 1.0 / (1u64 << 34) as f64;
    const BUDGET: usize = 20_000;
    let tol = 1e-12 * scale;
    let mut found: Vec<(f64, f64)> = Vec::new();
    let mut stack = vec![(*s1, 0.0f64, 1.0f64, *s2, 0.0f64, 1.0f64)];
    let mut visited = 0usize;
    while let Some((a, a0, a1, b, b0, b1)) = stack.pop() {
        visited += 1;
        if visited > BUDGET {
            break;
        }
        if !a.control_bbox().inflate(tol).overlaps(&b.control_bbox()) {
            continue;
        }
        let wa = a1 - a0;
        let wb = b1 - b0;
        if wa <= PARAM_STOP && wb <= PARAM_STOP {
            found.push((0.5 * (a0 + a1), 0.5 * (b0 + b1)));
            continue;
        }
        let da = a.control_bbox().diagonal();
        let db = b.control_bbox().diagonal();
        if (da >= db && wa > PARAM_STOP) || wb <= PARAM_STOP {
            let am = 0.5 * (a0 + a1);
            let (al, ar) = a.split_half();
            stack.push((ar, am, a1, b, b0, b1));
            stack.push((al, a0, am, b, b0, b1));
        } else {
            let bm = 0.5 * (b0 + b1);
            let (bl, br) = b.split_half();
            stack.push((a, a0, a1, br, bm, b1));
            stack.push((a, a0, a1, bl, b0, bm));
        }
    }
    found.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for p in found {
        match merged.last() {
            Some(l) if (p.0 - l.0).abs() <= 1e-6 && (p.1 - l.1).abs() <= 1e-6 => {}
            _ => merged.push(p),
        }
    }
    merged
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots;

    fn square() -> ClosedCurve {
        ClosedCurve::polygon(&[
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    fn quarter() -> CubicSegment {
        let a = 4.0 / 3.0 * (2f64.sqrt() - 1.0);
        CubicSegment::new(Point2::new(1.0, 0.0), Point2::new(1.0, a), Point2::new(a, 1.0), Point2::new(0.0, 1.0))
    }

    #[test]
    fn square_horizontal_probe() {
        let hits = intersections(&square(), Point2::new(-1.0, 0.5), Point2::new(2.0, 0.5)).unwrap();
        assert_eq!(hits.len(), 2);
    }

    #[test]
    fn far_probe_misses() {
        let hits = intersections(&square(), Point2::new(10.0, 10.0), Point2::new(11.0, 12.0)).unwrap();
        assert!(hits.is_empty());
    }

    #[test]
    fn diagonal_through_nodes_counts_each_node_once() {
        let hits = intersections(&square(), Point2::new(0.0, 0.0), Point2::new(1.0, 1.0)).unwrap();
        assert_eq!(hits.len(), 2);
        assert_eq!(hits[0].segment, 0);
        assert_eq!(hits[0].t, 0.0);
        assert_eq!(hits[1].segment, 2);
        assert_eq!(hits[1].t, 0.0);
    }

    #[test]
    fn quarter_arc_against_diagonal_matches_cubic_solver() {
        // Oracle: the arc meets y = x where y(t) - x(t) = 0, a cubic in t.
        let seg = quarter();
        let c = |p: Point2| p.y - p.x;
        let (q0, q1, q2, q3) = (c(seg.p0), c(seg.p1), c(seg.p2), c(seg.p3));
        let power = [q0, 3.0 * (q1 - q0), 3.0 * (q0 - 2.0 * q1 + q2), q3 - q0 + 3.0 * (q1 - q2)];
        let expected = roots::roots_in_open_unit_interval(&power);
        assert_eq!(expected.len(), 1);

        let mut segs = vec![seg];
        segs.push(CubicSegment::line(seg.p3, Point2::new(0.0, 0.0)));
        segs.push(CubicSegment::line(Point2::new(0.0, 0.0), seg.p0));
        let curve = ClosedCurve::new(segs).unwrap();
        let hits: Vec<_> = intersections(&curve, Point2::new(0.5, 0.5), Point2::new(1.0, 1.0))
            .unwrap()
            .into_iter()
            .filter(|h| h.segment == 0)
            .collect();
        assert_eq!(hits.len(), 1);
        assert!((hits[0].t - expected[0]).abs() < 1e-9);
        let h = 0.5f64.sqrt();
        assert!(hits[0].point.distance(Point2::new(h, h)) < 1e-9);
    }

    #[test]
    fn overlap_is_reported() {
        let r = intersections(&square(), Point2::new(0.2, 0.0), Point2::new(0.8, 0.0));
        assert_eq!(r, Err(IntersectError::Overlap { segment: 0 }));
    }

    #[test]
    fn reversed_query_gives_same_points() {
        let curve = square();
        let (a, b) = (Point2::new(-0.3, 0.1), Point2::new(1.4, 0.8));
        let f = intersections(&curve, a, b).unwrap();
        let r = intersections(&curve, b, a).unwrap();
        assert_eq!(f.len(), r.len());
        for (x, y) in f.iter().zip(&r) {
            assert!(x.point.distance(y.point) < 1e-12);
            assert!((x.s - (1.0 - y.s)).abs() < 1e-12);
        }
    }

    #[test]
    fn crossing_segments_found_once() {
        let a = CubicSegment::line(Point2::new(0.0, 0.0), Point2::new(1.0, 1.0));
        let b = CubicSegment::line(Point2::new(0.0, 1.0), Point2::new(1.0, 0.0));
        let hits = segment_pair_intersections(&a, &b, 1.0);
        assert_eq!(hits.len(), 1);
        assert!((hits[0].0 - 0.5).abs() < 1e-9 && (hits[0].1 - 0.5).abs() < 1e-9);
    }
}
