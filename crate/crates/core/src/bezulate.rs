//! Cutting a simply connected curved region into pieces bounded by at most four
//! cubic segments, by repeatedly slicing off admissible chords.

use thiserror::Error;

use crate::geom::{intersections, refine_midpoints, subpath, ClosedCurve, CubicSegment};
use crate::winding::strictly_inside;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BezulateLimits {
    pub max_refinements: u32,
}

impl Default for BezulateLimits {
    fn default() -> Self {
        Self { max_refinements: 8 }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BezulateError {
    #[error("no admissible chord after {refinements} midpoint refinements")]
    RefinementLimitExceeded { refinements: u32 },
    #[error("curve encloses no area")]
    ZeroArea,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bezulation {
    /// Counterclockwise pieces with 1 to 4 segments each, in extraction order.
    pub curves: Vec<ClosedCurve>,
    /// Chords that were cut, oriented as they appear in the remainder curve.
    pub chords: Vec<CubicSegment>,
    pub refinements: u32,
}

/// The straight chord from node `i` to node `i + n`, if it touches the curve only
/// at its endpoints and its midpoint is strictly inside.
pub fn chord_admissible(curve: &ClosedCurve, i: usize, n: usize) -> Option<CubicSegment> {
    let a = curve.node(i);
    let b = curve.node(i + n);
    if a == b {
        return None;
    }
    let hits = intersections(curve, a, b).ok()?;
    if hits.len() != 2 || !hits.iter().all(|h| h.point == a || h.point == b) {
        return None;
    }
    strictly_inside(curve, a.midpoint(b)).then(|| CubicSegment::line(a, b))
}

pub fn bezulate(curve: &ClosedCurve, limits: BezulateLimits) -> Result<Bezulation, BezulateError> {
    let mut c = curve.without_nulls().ok_or(BezulateError::ZeroArea)?;
    let area = c.signed_area();
    if area == 0.0 {
        return Err(BezulateError::ZeroArea);
    }
    if area < 0.0 {
        c = c.reversed();
    }

    let mut curves = Vec::new();
    let mut chords = Vec::new();
    let mut refinements = 0;
    'outer: while c.len() > 4 {
        let len = c.len();
        for n in [3usize, 2] {
            for i in 0..len {
                if let Some(chord) = chord_admissible(&c, i, n) {
                    let mut piece = subpath(&c, i, i + n).expect("n < len");
                    piece.push(chord.reversed());
                    let mut rest = subpath(&c, i + n, i).expect("n < len");
                    rest.push(chord);
                    curves.push(ClosedCurve::new(piece).expect("chord closes the run"));
                    c = ClosedCurve::new(rest).expect("chord closes the run");
                    chords.push(chord);
                    continue 'outer;
                }
            }
        }
        if refinements >= limits.max_refinements {
            return Err(BezulateError::RefinementLimitExceeded { refinements });
        }
        c = refine_midpoints(&c);
        refinements += 1;
    }
    curves.push(c);
    Ok(Bezulation { curves, chords, refinements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point2;

    fn regular(n: usize) -> ClosedCurve {
        let pts: Vec<_> = (0..n)
            .map(|k| {
                let a = std::f64::consts::TAU * k as f64 / n as f64;
                Point2::new(a.cos(), a.sin())
            })
            .collect();
        ClosedCurve::polygon(&pts).unwrap()
    }

    #[test]
    fn pentagon_splits_into_four_and_three() {
        let out = bezulate(&regular(5), BezulateLimits::default()).unwrap();
        let counts: Vec<_> = out.curves.iter().map(ClosedCurve::len).collect();
        assert_eq!(counts, vec![4, 3]);
        assert_eq!(out.refinements, 0);
        let total: f64 = out.curves.iter().map(ClosedCurve::signed_area).sum();
        assert!((total - regular(5).signed_area()).abs() < 1e-12);
    }

    #[test]
    fn square_passes_through() {
        let sq = regular(4);
        let out = bezulate(&sq, BezulateLimits::default()).unwrap();
        assert_eq!(out.curves, vec![sq]);
    }

    #[test]
    fn clockwise_input_is_normalized() {
        let out = bezulate(&regular(7).reversed(), BezulateLimits::default()).unwrap();
        assert!(out.curves.iter().all(|c| c.signed_area() > 0.0 && c.len() <= 4));
    }

    #[test]
    fn pentagon_diagonal_is_admissible() {
        assert!(chord_admissible(&regular(5), 0, 3).is_some());
    }

    #[test]
    fn l_shape_notch_chord_rejected() {
        // Reflex corner at node 3; the chord 2 -> 4 passes outside the region.
        let l = ClosedCurve::polygon(&[
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 1.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 2.0),
            Point2::new(0.0, 2.0),
        ])
        .unwrap();
        assert!(chord_admissible(&l, 2, 2).is_none());
        assert!(!strictly_inside(&l, Point2::new(1.5, 1.5)));
    }
}
