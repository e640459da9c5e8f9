//! Cubic Bézier approximations of the circle and the sphere.

use thiserror::Error;

use crate::geom::{CubicSegment, Patch, Point2, Point3};

/// Interior control-point offset of the quarter-circle arc, `4/3 (√2 - 1)`.
pub fn arc_constant() -> f64 {
    4.0 / 3.0 * (std::f64::consts::SQRT_2 - 1.0)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadricError {
    #[error("need at least 2 samples per direction, got {0}")]
    TooFewSamples(usize),
}

/// Quarter of the unit circle from (1, 0) to (0, 1).
pub fn quarter_arc() -> CubicSegment {
    let a = arc_constant();
    CubicSegment::new(Point2::new(1.0, 0.0), Point2::new(1.0, a), Point2::new(a, 1.0), Point2::new(0.0, 1.0))
}

/// Unit circle as four quarter arcs, counterclockwise from (1, 0).
pub fn unit_circle() -> Vec<CubicSegment> {
    let q = quarter_arc();
    (0..4)
        .map(|k| {
            let rot = |p: Point2| match k {
                0 => p,
                1 => Point2::new(0.0 - p.y, p.x),
                2 => Point2::new(0.0 - p.x, 0.0 - p.y),
                _ => Point2::new(p.y, 0.0 - p.x),
            };
            q.map(rot)
        })
        .collect()
}

/// Patch covering the octant x, y, z >= 0, with the pole (0, 0, 1) as the
/// collapsed edge `v = 1`.
pub fn sphere_octant() -> Patch {
    let a = arc_constant();
    let pole = Point3::new(0.0, 0.0, 1.0);
    let p = |x, y, z| Point3::new(x, y, z);
    Patch::new([
        [p(1.0, 0.0, 0.0), p(1.0, 0.0, a), p(a, 0.0, 1.0), pole],
        [p(1.0, a, 0.0), p(1.0, a, a), p(a, a * a, 1.0), pole],
        [p(a, 1.0, 0.0), p(a, 1.0, a), p(a * a, a, 1.0), pole],
        [p(0.0, 1.0, 0.0), p(0.0, 1.0, a), p(0.0, a, 1.0), pole],
    ])
}

/// Eight octant patches with outward normals. Reflections write `0 - c` so that
/// zero coordinates stay `+0.0` and shared seams are bitwise identical.
pub fn unit_sphere() -> Vec<Patch> {
    let base = sphere_octant();
    let mut out = Vec::with_capacity(8);
    for k in 0..8u32 {
        let s = [k & 1 != 0, k & 2 != 0, k & 4 != 0];
        let flip = |v: f64, f: bool| if f { 0.0 - v } else { v };
        let mut p = base.map(|q| Point3::new(flip(q.x, s[0]), flip(q.y, s[1]), flip(q.z, s[2])));
        if s.iter().filter(|f| **f).count() % 2 == 1 {
            // An odd number of reflections turns normals inward; swap u and v.
            let c = p.control;
            for i in 0..4 {
                for j in 0..4 {
                    p.control[i][j] = c[j][i];
                }
            }
        }
        out.push(p);
    }
    out
}

/// Largest `| |σ(u, v)| - 1 |` over an `n × n` grid on each patch.
pub fn radius_error(patches: &[Patch], n: usize) -> Result<f64, QuadricError> {
    if n < 2 {
        return Err(QuadricError::TooFewSamples(n));
    }
    let m = (n - 1) as f64;
    let mut worst = 0.0f64;
    for p in patches {
        for a in 0..n {
            for b in 0..n {
                let r = p.eval(a as f64 / m, b as f64 / m).norm();
                worst = worst.max((r - 1.0).abs());
            }
        }
    }
    Ok(worst)
}
