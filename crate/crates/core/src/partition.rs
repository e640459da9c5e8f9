//! Splitting regions with holes into simply connected pieces.
//!
//! Curves are grouped by containment. Within a group, each hole is joined to the
//! surrounding boundary by cutting out a thin region between a probe segment
//! `A -> B` (hole to outer boundary), a nearby return segment, and the arcs of
//! the two curves in between. After the cut, the hole's boundary is part of the
//! outer boundary and the region is one hole simpler.

use thiserror::Error;

use crate::geom::{intersections, segment_pair_intersections, subpath, ClosedCurve, CubicSegment, Point2};
use crate::winding::{strictly_inside, winding_number};

/// Initial step along the outer curve (node units).
pub const DELTA_START: f64 = 1.0;
/// Smallest step tried before giving up on a probe.
pub const DELTA_MIN: f64 = 1e-6;
/// Largest step along the hole for the return segment (node units of the hole).
const HOLE_STEP_MAX: f64 = 0.25;
/// Probe candidates tried per hole.
const PROBE_LIMIT: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PartitionError {
    #[error("curves {0} and {1} intersect")]
    CrossingCurves(usize, usize),
    #[error("could not connect inner curve {inner} to its outer boundary")]
    MergeFailure { inner: usize },
}

/// A top-level curve together with every curve it surrounds.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveGroup {
    pub toplevel: ClosedCurve,
    pub inner: Vec<ClosedCurve>,
    /// Index of `toplevel` in the input list.
    pub source: usize,
    /// Input indices of `inner`, in the same order.
    pub inner_sources: Vec<usize>,
}

/// Geometry of one accepted cut, kept for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MergeContext {
    pub a: Point2,
    pub b: Point2,
    pub t_b: f64,
    pub delta: f64,
    pub c: Point2,
    /// Point on the hole where the return segment lands.
    pub a_return: Point2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MergeOutput {
    /// One cut-out region per hole, then the final outer boundary; all CCW.
    pub curves: Vec<ClosedCurve>,
    pub cuts: Vec<MergeContext>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub curve: ClosedCurve,
    /// Input index of the top-level curve whose group produced this piece.
    pub source: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Partition {
    pub pieces: Vec<Piece>,
    pub cuts: Vec<MergeContext>,
}

fn curves_cross(a: &ClosedCurve, b: &ClosedCurve) -> bool {
    if !a.control_bbox().overlaps(&b.control_bbox()) {
        return false;
    }
    let scale = a.control_bbox().union(&b.control_bbox()).diagonal();
    for s in a.segments().iter().filter(|s| !s.is_null()) {
        for t in b.segments().iter().filter(|s| !s.is_null()) {
            if s.control_bbox().overlaps(&t.control_bbox()) && !segment_pair_intersections(s, t, scale).is_empty() {
                return true;
            }
        }
    }
    false
}

/// Whether `inner` lies inside `outer`, judged by one node of `inner`.
fn contains(outer: &ClosedCurve, inner: &ClosedCurve) -> Option<bool> {
    winding_number(outer, inner.node(0)).ok().map(|w| w != 0)
}

/// Groups curves by containment: each top-level curve with all curves inside it.
pub fn sort_curves(curves: &[ClosedCurve]) -> Result<Vec<CurveGroup>, PartitionError> {
    sort_indexed(curves, &(0..curves.len()).collect::<Vec<_>>())
}

fn sort_indexed(curves: &[ClosedCurve], ids: &[usize]) -> Result<Vec<CurveGroup>, PartitionError> {
    let n = curves.len();
    let mut inside = vec![vec![false; n]; n]; // inside[i][j]: curve i inside curve j
    for i in 0..n {
        for j in (i + 1)..n {
            if curves_cross(&curves[i], &curves[j]) {
                return Err(PartitionError::CrossingCurves(ids[i], ids[j]));
            }
            let ij = contains(&curves[j], &curves[i]).ok_or(PartitionError::CrossingCurves(ids[i], ids[j]))?;
            let ji = contains(&curves[i], &curves[j]).ok_or(PartitionError::CrossingCurves(ids[i], ids[j]))?;
            inside[i][j] = ij;
            inside[j][i] = ji;
        }
    }
    let mut groups = Vec::new();
    for top in 0..n {
        if (0..n).any(|j| inside[top][j]) {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&i| inside[i][top]).collect();
        groups.push(CurveGroup {
            toplevel: curves[top].clone(),
            inner: members.iter().map(|&i| curves[i].clone()).collect(),
            source: ids[top],
            inner_sources: members.iter().map(|&i| ids[i]).collect(),
        });
    }
    Ok(groups)
}

/// Splits every region described by `curves` into simply connected pieces.
/// Curves nested at odd depth are holes, at even depth islands.
pub fn partition(curves: &[ClosedCurve]) -> Result<Partition, PartitionError> {
    let ids: Vec<usize> = (0..curves.len()).collect();
    let mut out = Partition::default();
    partition_into(curves, &ids, &mut out)?;
    Ok(out)
}

fn partition_into(curves: &[ClosedCurve], ids: &[usize], out: &mut Partition) -> Result<(), PartitionError> {
    for group in sort_indexed(curves, ids)? {
        let holes = sort_indexed(&group.inner, &group.inner_sources)?;
        for hole in &holes {
            partition_into(&hole.inner, &hole.inner_sources, out)?;
        }
        let inners: Vec<ClosedCurve> = holes.iter().map(|h| h.toplevel.clone()).collect();
        let inner_ids: Vec<usize> = holes.iter().map(|h| h.source).collect();
        let merged = merge_indexed(&group.toplevel, &inners, &inner_ids)?;
        out.pieces.extend(merged.curves.into_iter().map(|curve| Piece { curve, source: group.source }));
        out.cuts.extend(merged.cuts);
    }
    Ok(())
}

/// Joins each inner curve to `outer`, returning the cut-out regions followed by
/// the final outer boundary.
pub fn merge(outer: &ClosedCurve, inners: &[ClosedCurve]) -> Result<MergeOutput, PartitionError> {
    merge_indexed(outer, inners, &(0..inners.len()).collect::<Vec<_>>())
}

fn node_distance(a: &ClosedCurve, b: &ClosedCurve) -> f64 {
    a.nodes().flat_map(|p| b.nodes().map(move |q| p.distance(q))).fold(f64::INFINITY, f64::min)
}

fn merge_indexed(outer: &ClosedCurve, inners: &[ClosedCurve], ids: &[usize]) -> Result<MergeOutput, PartitionError> {
    let mut current = outer.without_nulls().unwrap_or_else(|| outer.clone()).to_ccw();
    let mut pending: Vec<(usize, ClosedCurve)> = inners
        .iter()
        .zip(ids)
        .map(|(c, &id)| (id, c.without_nulls().unwrap_or_else(|| c.clone()).to_cw()))
        .collect();
    pending.sort_by(|x, y| node_distance(&x.1, &current).total_cmp(&node_distance(&y.1, &current)));

    let mut curves = Vec::new();
    let mut cuts = Vec::new();
    while !pending.is_empty() {
        let (id, hole) = pending.remove(0);
        let others: Vec<&ClosedCurve> = pending.iter().map(|(_, c)| c).collect();
        let (sliver, merged, ctx) =
            connect(&current, &hole, &others).ok_or(PartitionError::MergeFailure { inner: id })?;
        curves.push(sliver);
        cuts.push(ctx);
        current = merged;
    }
    curves.push(current);
    Ok(MergeOutput { curves, cuts })
}

/// First adjacent (hole, outer) pair of hits along the probe `p -> q`.
fn probe_hits(outer: &ClosedCurve, hole: &ClosedCurve, others: &[&ClosedCurve], p: Point2, q: Point2) -> Option<(f64, Point2, f64, Point2)> {
    #[derive(Clone, Copy)]
    enum Owner {
        Outer,
        Hole,
        Other,
    }
    let mut hits: Vec<(f64, Owner, f64, Point2)> = Vec::new();
    for h in intersections(outer, p, q).ok()? {
        hits.push((h.s, Owner::Outer, h.param(), h.point));
    }
    for h in intersections(hole, p, q).ok()? {
        hits.push((h.s, Owner::Hole, h.param(), h.point));
    }
    for o in others {
        for h in intersections(o, p, q).ok()? {
            hits.push((h.s, Owner::Other, h.param(), h.point));
        }
    }
    hits.sort_by(|a, b| a.0.total_cmp(&b.0));
    hits.windows(2).find_map(|w| match (w[0].1, w[1].1) {
        (Owner::Hole, Owner::Outer) if w[0].3 != w[1].3 => Some((w[0].2, w[0].3, w[1].2, w[1].3)),
        _ => None,
    })
}

/// Every hit of segment `a -> b` with `curve` lies at `allowed` (if any).
fn touches_only_at(curve: &ClosedCurve, a: Point2, b: Point2, allowed: Option<Point2>, tol: f64) -> bool {
    match intersections(curve, a, b) {
        Ok(hits) => hits.iter().all(|h| allowed.is_some_and(|p| h.point.distance(p) <= tol)),
        Err(_) => false,
    }
}

fn connect(outer: &ClosedCurve, hole: &ClosedCurve, others: &[&ClosedCurve]) -> Option<(ClosedCurve, ClosedCurve, MergeContext)> {
    let scale = outer.control_bbox().diagonal();
    let tol = 1e-9 * scale;

    let mut probes: Vec<(f64, Point2, Point2)> = Vec::new();
    for p in hole.nodes() {
        for q in outer.nodes() {
            probes.push((p.distance(q), p, q));
        }
    }
    probes.sort_by(|a, b| a.0.total_cmp(&b.0));
    probes.dedup_by(|a, b| a.1 == b.1 && a.2 == b.2);

    for &(_, p, q) in probes.iter().take(PROBE_LIMIT) {
        let Some((t_a, a, t_b, b)) = probe_hits(outer, hole, others, p, q) else {
            continue;
        };
        let far_on_hole = hole.point_at(t_a + 0.5 * hole.len() as f64);
        let mut delta = DELTA_START.min(0.5 * outer.len() as f64);
        while delta >= DELTA_MIN {
            let attempt = try_cut(outer, hole, others, t_a, t_b, delta, far_on_hole, tol);
            if let Some((sliver, merged, c, a_ret)) = attempt {
                let ctx = MergeContext { a, b, t_b, delta, c, a_return: a_ret };
                return Some((sliver, merged, ctx));
            }
            delta *= 0.5;
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn try_cut(
    outer: &ClosedCurve,
    hole: &ClosedCurve,
    others: &[&ClosedCurve],
    t_a: f64,
    t_b: f64,
    delta: f64,
    far_on_hole: Point2,
    tol: f64,
) -> Option<(ClosedCurve, ClosedCurve, Point2, Point2)> {
    let hole_step = (0.5 * delta).min(HOLE_STEP_MAX * hole.len().min(4) as f64);
    let (outer_r, on) = outer.insert_nodes(&[t_b, t_b + delta]);
    let (hole_r, hn) = hole.insert_nodes(&[t_a, t_a - hole_step]);
    let (ib, ic) = (on[0], on[1]);
    let (ia, ia2) = (hn[0], hn[1]);
    if ib == ic || ia == ia2 {
        return None;
    }
    let (a, a2) = (hole_r.node(ia), hole_r.node(ia2));
    let (b, c) = (outer_r.node(ib), outer_r.node(ic));
    if a2 == c {
        return None;
    }

    // The return segment may touch the outer curve only at C and the hole only at A'.
    if !touches_only_at(&outer_r, a2, c, Some(c), tol) || !touches_only_at(&hole_r, a2, c, Some(a2), tol) {
        return None;
    }
    if !others.iter().all(|o| touches_only_at(o, a2, c, None, tol)) {
        return None;
    }

    let mut sliver = subpath(&outer_r, ib, ic).ok()?;
    sliver.push(CubicSegment::line(c, a2));
    sliver.extend(subpath(&hole_r, ia2, ia).ok()?);
    sliver.push(CubicSegment::line(a, b));
    let sliver = ClosedCurve::new(sliver).ok()?;
    if sliver.signed_area() <= 0.0 {
        return None;
    }
    if others.iter().any(|o| strictly_inside(&sliver, o.node(0))) || strictly_inside(&sliver, far_on_hole) {
        return None;
    }

    let mut merged = subpath(&outer_r, ic, ib).ok()?;
    merged.push(CubicSegment::line(b, a));
    merged.extend(subpath(&hole_r, ia, ia2).ok()?);
    merged.push(CubicSegment::line(a2, c));
    let merged = ClosedCurve::new(merged).ok()?;
    if merged.signed_area() <= 0.0 || !sliver.is_simple() || !merged.is_simple() {
        return None;
    }
    Some((sliver, merged, c, a2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(x0: f64, y0: f64, side: f64) -> ClosedCurve {
        ClosedCurve::polygon(&[
            Point2::new(x0, y0),
            Point2::new(x0 + side, y0),
            Point2::new(x0 + side, y0 + side),
            Point2::new(x0, y0 + side),
        ])
        .unwrap()
    }

    #[test]
    fn groups_by_containment() {
        let g = sort_curves(&[square(0.0, 0.0, 4.0), square(1.0, 1.0, 1.0)]).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].inner.len(), 1);
        let g = sort_curves(&[square(0.0, 0.0, 1.0), square(3.0, 0.0, 1.0)]).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g.iter().all(|g| g.inner.is_empty()));
    }

    #[test]
    fn crossing_curves_rejected() {
        let r = sort_curves(&[square(0.0, 0.0, 2.0), square(1.0, 1.0, 2.0)]);
        assert_eq!(r, Err(PartitionError::CrossingCurves(0, 1)));
    }

    #[test]
    fn no_inners_passes_through() {
        let sq = square(0.0, 0.0, 1.0);
        let out = merge(&sq, &[]).unwrap();
        assert_eq!(out.curves, vec![sq]);
    }

    #[test]
    fn annulus_gives_two_simple_ccw_pieces() {
        let out = merge(&square(0.0, 0.0, 4.0), &[square(1.0, 1.0, 2.0).reversed()]).unwrap();
        assert_eq!(out.curves.len(), 2);
        for c in &out.curves {
            assert!(c.signed_area() > 0.0);
            assert!(c.is_simple());
        }
        let total: f64 = out.curves.iter().map(ClosedCurve::signed_area).sum();
        assert!((total - 12.0).abs() < 1e-12);
    }

    #[test]
    fn insert_nodes_keeps_geometry() {
        let sq = square(0.0, 0.0, 1.0);
        let (r, idx) = sq.insert_nodes(&[0.5, 2.0, 3.25]);
        assert_eq!(r.len(), 6);
        assert_eq!(r.node(idx[0]), Point2::new(0.5, 0.0));
        assert_eq!(r.node(idx[1]), Point2::new(1.0, 1.0));
        assert_eq!(r.node(idx[2]), Point2::new(0.0, 0.75));
    }
}
