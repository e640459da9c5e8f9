mod common;

use common::*;
use geokit::geom::{ClosedCurve, CubicSegment, Point2};
use geokit::predicates::{orient2d, orient2d_exact, Orientation};
use geokit::quadric::{quarter_arc, unit_circle};
use geokit::winding::*;
use proptest::prelude::*;
use rand::Rng;

/// Signed crossings of an open polyline with the ray from `z` toward +x.
fn chain_crossings(chain: &[Point2], z: Point2) -> i32 {
    let mut w = 0;
    for e in chain.windows(2) {
        let (a, b) = (e[0], e[1]);
        let side = (b.x - a.x) * (z.y - a.y) - (z.x - a.x) * (b.y - a.y);
        if a.y <= z.y {
            if b.y > z.y && side > 0.0 {
                w += 1;
            }
        } else if b.y <= z.y && side < 0.0 {
            w -= 1;
        }
    }
    w
}

fn dense_chain(seg: &CubicSegment, n: usize) -> Vec<Point2> {
    (0..=n).map(|k| bezier(seg, k as f64 / n as f64)).collect()
}

#[test]
fn straight_conventions() {
    let z = p2(0.0, 0.0);
    assert_eq!(straight_contribution(p2(1.0, -1.0), p2(1.0, 1.0), z), Ok(1));
    assert_eq!(straight_contribution(p2(1.0, 1.0), p2(1.0, -1.0), z), Ok(-1));
    assert_eq!(straight_contribution(p2(-2.0, -1.0), p2(-2.0, 1.0), z), Ok(0));
    assert_eq!(straight_contribution(p2(-1.0, 0.0), p2(1.0, 0.0), z), Err(WindingError::OnBoundary));
    assert_eq!(straight_contribution(p2(0.0, 0.0), p2(1.0, 3.0), z), Err(WindingError::OnBoundary));
    // Colinear but beyond the edge: not a boundary point.
    assert_eq!(straight_contribution(p2(1.0, 0.0), p2(2.0, 0.0), z), Ok(0));
}

#[test]
fn orientation_predicate() {
    let (a, b) = (p2(0.0, 0.0), p2(1.0, 0.0));
    assert_eq!(orient2d(a, b, p2(0.5, 1.0)), Orientation::CounterClockwise);
    assert_eq!(orient2d(a, b, p2(0.5, -1.0)), Orientation::Clockwise);
    assert_eq!(orient2d(a, b, p2(7.0, 0.0)), Orientation::Colinear);
    // Nearly colinear points where naive evaluation is unreliable.
    let mut r = rng(1);
    for _ in 0..2000 {
        let a = p2(r.gen_range(0.0..1.0), r.gen_range(0.0..1.0));
        let b = p2(r.gen_range(0.0..1.0), r.gen_range(0.0..1.0));
        let t = r.gen_range(0.0..1.0);
        let c = p2(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
        assert_eq!(orient2d(a, b, c), orient2d_exact(a, b, c));
        assert_eq!(orient2d(a, b, c).sign(), -orient2d(b, a, c).sign());
    }
    // A classic: points on y = x at tiny offsets.
    let base = 0.5;
    for k in 0..64 {
        let c = p2(base + k as f64 * f64::EPSILON, base + k as f64 * f64::EPSILON);
        assert_eq!(orient2d(p2(12.0, 12.0), p2(24.0, 24.0), c), Orientation::Colinear);
    }
}

#[test]
fn curved_matches_dense_chain() {
    let arc = quarter_arc();
    let chain = dense_chain(&arc, 1024);
    assert_eq!(curved_contribution(&arc, p2(0.0, 0.0), MAX_DEPTH), Ok(chain_crossings(&chain, p2(0.0, 0.0))));
    let mut r = rng(2);
    for _ in 0..500 {
        let z = p2(r.gen_range(-0.5..1.5), r.gen_range(-0.5..1.5));
        if dist_to_polygon(&chain[..chain.len() - 1], z) < 1e-4 || chain.iter().any(|p| (p.y - z.y).abs() < 1e-12) {
            continue;
        }
        assert_eq!(curved_contribution(&arc, z, MAX_DEPTH), Ok(chain_crossings(&chain, z)), "z = {z:?}");
    }
}

#[test]
fn far_points_use_endpoints() {
    let mut r = rng(3);
    for _ in 0..100 {
        let pts: Vec<Point2> = (0..4).map(|_| p2(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect();
        let s = CubicSegment::new(pts[0], pts[1], pts[2], pts[3]);
        let z = p2(100.0, 100.0);
        assert_eq!(curved_contribution(&s, z, MAX_DEPTH), straight_contribution(s.p0, s.p3, z));
        let line = CubicSegment::line(pts[0], pts[1]);
        let z = p2(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0));
        assert_eq!(curved_contribution(&line, z, MAX_DEPTH), straight_contribution(line.p0, line.p3, z));
    }
}

#[test]
fn squares() {
    let sq = rect(0.0, 0.0, 1.0, 1.0);
    assert_eq!(winding_number(&sq, p2(0.5, 0.5)), Ok(1));
    assert_eq!(winding_number(&sq, p2(2.0, 2.0)), Ok(0));
    assert_eq!(winding_number(&sq.reversed(), p2(0.5, 0.5)), Ok(-1));
    assert_eq!(winding_number(&sq, p2(1.0, 0.5)), Err(WindingError::OnBoundary));
    assert_eq!(winding_number(&sq, p2(0.0, 0.0)), Err(WindingError::OnBoundary));
}

#[test]
fn bezier_circle_against_flattening() {
    let c = ClosedCurve::new(unit_circle()).unwrap();
    assert_eq!(winding_number(&c, p2(0.0, 0.0)), Ok(1));
    let poly = flatten(&c, 4096);
    let mut r = rng(4);
    let pts = sample_points(&mut r, 1000, p2(-1.5, -1.5), p2(1.5, 1.5), std::slice::from_ref(&poly), 1e-5);
    for z in pts {
        assert_eq!(winding_number(&c, z), Ok(polygon_winding(&poly, z)), "z = {z:?}");
    }
}

#[test]
fn points_on_curve_are_boundary() {
    let mut r = rng(5);
    for _ in 0..20 {
        let c = random_star_curve(&mut r, 5);
        for seg in c.segments() {
            assert_eq!(winding_number(&c, seg.p0), Err(WindingError::OnBoundary));
        }
    }
    // Interior points of curved segments, where the evaluated point is only
    // within rounding of the curve.
    let c = ClosedCurve::new(unit_circle()).unwrap();
    let q = bezier(&c.segments()[1], 0.37);
    let w = winding_number(&c, q);
    assert!(w == Err(WindingError::OnBoundary) || w == Ok(0) || w == Ok(1));
}

#[test]
fn region_membership() {
    let annulus = load_outline("annulus.json");
    assert_eq!(inside(&annulus, p2(0.5, 2.0), FillRule::NonZero), Ok(true));
    assert_eq!(inside(&annulus, p2(2.0, 2.0), FillRule::NonZero), Ok(false));
    assert_eq!(inside(&[rect(0.0, 0.0, 1.0, 1.0)], p2(0.5, 0.5), FillRule::NonZero), Ok(true));

    // Two copies of the same square: winding 2, inside for nonzero, outside for even-odd.
    let twice = [rect(0.0, 0.0, 1.0, 1.0), rect(0.0, 0.0, 1.0, 1.0).map(|p| p2(p.x * 2.0, p.y * 2.0))];
    assert_eq!(total_winding(&twice, p2(0.5, 0.5)), Ok(2));
    assert_eq!(inside(&twice, p2(0.5, 0.5), FillRule::EvenOdd), Ok(false));
    assert_eq!(inside(&twice, p2(1.5, 1.5), FillRule::EvenOdd), Ok(true));
}

#[test]
fn random_blobs_against_oracle() {
    let mut r = rng(6);
    let curves: Vec<ClosedCurve> = (0..5).map(|_| random_star_curve(&mut r, 7)).collect();
    for c in &curves {
        let poly = flatten(c, 4096);
        let bb = c.control_bbox().inflate(0.2);
        for z in sample_points(&mut r, 500, bb.min, bb.max, std::slice::from_ref(&poly), 1e-5 * bb.diagonal()) {
            let expect = polygon_winding(&poly, z) != 0;
            assert_eq!(inside(std::slice::from_ref(c), z, FillRule::NonZero), Ok(expect));
        }
    }
}

proptest! {
    #[test]
    fn reversal_negates(seed in 0u64..10_000, x in -3.0f64..3.0, y in -3.0f64..3.0) {
        let mut r = rng(seed);
        let c = random_star_curve(&mut r, 5);
        let z = p2(x, y);
        match winding_number(&c, z) {
            Ok(w) => prop_assert_eq!(winding_number(&c.reversed(), z), Ok(-w)),
            Err(e) => prop_assert_eq!(winding_number(&c.reversed(), z), Err(e)),
        }
    }

    #[test]
    fn translation_invariant(seed in 0u64..10_000, dx in -50.0f64..50.0, dy in -50.0f64..50.0) {
        // Integer shifts round the coordinates slightly, so points near the curve are skipped.
        let (dx, dy) = (dx.round(), dy.round());
        let mut r = rng(seed);
        let c = random_star_curve(&mut r, 4);
        let z = p2(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0));
        let poly = flatten(&c, 2048);
        prop_assume!(dist_to_polygon(&poly, z) > 1e-6);
        let moved = c.map(|p| p2(p.x + dx, p.y + dy));
        prop_assert_eq!(winding_number(&c, z), winding_number(&moved, p2(z.x + dx, z.y + dy)));
    }
}
