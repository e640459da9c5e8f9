//! Global maxima over Bézier patches by corner evaluation and control-net pruning.
//!
//! The surface lies inside the box spanned by its control points, so for any
//! function that is nondecreasing in each coordinate, its value at the box's
//! maximal vertex bounds it over the whole patch. Corner nodes lie on the surface
//! and give lower bounds. Subdividing tightens the gap; a subpatch whose upper
//! bound does not beat the running maximum is dropped.

use thiserror::Error;

use crate::geom::{subdivide_patch, Affine3, Box3, Patch, Point3};

pub const DEFAULT_DEPTH: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("control point at depth z = {z} is not in front of the eye")]
    NonPositiveDepth { z: f64 },
    #[error("no patches given")]
    Empty,
}

const NON_CORNER: [(usize, usize); 12] = [
    (0, 1),
    (0, 2),
    (1, 0),
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 0),
    (2, 1),
    (2, 2),
    (2, 3),
    (3, 1),
    (3, 2),
];

fn corner_max(patch: &Patch, f: impl Fn(Point3) -> f64) -> f64 {
    patch.corners().into_iter().map(f).fold(f64::NEG_INFINITY, f64::max)
}

/// Maximum of coordinate `axis` (0 = x, 1 = y, 2 = z) over the patch, seeded with `m`.
pub fn cartesian_max(axis: usize, patch: &Patch, m: f64, depth: u32) -> f64 {
    let m = m.max(corner_max(patch, |p| p.axis(axis)));
    if depth == 0 {
        return m;
    }
    let v = NON_CORNER.iter().map(|&(i, j)| patch.control[i][j].axis(axis)).fold(f64::NEG_INFINITY, f64::max);
    if v <= m {
        return m;
    }
    subdivide_patch(patch).iter().fold(m, |m, s| cartesian_max(axis, s, m, depth - 1))
}

/// A function nondecreasing in every coordinate (the caller vouches for this on
/// the region spanned by the control points), a running maximum and a depth budget.
pub struct BoundsQuery<'a> {
    pub f: &'a dyn Fn(Point3) -> f64,
    pub m: f64,
    pub depth: u32,
}

pub fn function_max(q: &BoundsQuery, patch: &Patch) -> f64 {
    fn go(f: &dyn Fn(Point3) -> f64, patch: &Patch, m: f64, depth: u32) -> f64 {
        let m = m.max(corner_max(patch, f));
        if depth == 0 {
            return m;
        }
        if f(patch.control_box().max) <= m {
            return m;
        }
        subdivide_patch(patch).iter().fold(m, |m, s| go(f, s, m, depth - 1))
    }
    go(q.f, patch, q.m, q.depth)
}

fn negated(patch: &Patch) -> Patch {
    patch.map(|p| -p)
}

/// Tight axis-aligned box of the patch surface, from six maximizations.
pub fn patch_bbox(patch: &Patch, depth: u32) -> Box3 {
    patches_bbox(std::slice::from_ref(patch), depth).expect("one patch")
}

/// Box of a patch set; each maximization is seeded with the result so far.
pub fn patches_bbox(patches: &[Patch], depth: u32) -> Result<Box3, BoundsError> {
    if patches.is_empty() {
        return Err(BoundsError::Empty);
    }
    let mut hi = [f64::NEG_INFINITY; 3];
    let mut lo = [f64::NEG_INFINITY; 3];
    for axis in 0..3 {
        for p in patches {
            hi[axis] = cartesian_max(axis, p, hi[axis], depth);
            lo[axis] = cartesian_max(axis, &negated(p), lo[axis], depth);
        }
    }
    Ok(Box3 { min: Point3::new(-lo[0], -lo[1], -lo[2]), max: Point3::new(hi[0], hi[1], hi[2]) })
}

/// Largest `|x/z|` and `|y/z|` of the patches seen from the eye (camera looking
/// down `+z` after `eye` is applied), as the full field-of-view angle in radians
/// for a square viewport.
pub fn fov_angle(patches: &[Patch], eye: &Affine3, depth: u32) -> Result<f64, BoundsError> {
    if patches.is_empty() {
        return Err(BoundsError::Empty);
    }
    let mut cams = Vec::with_capacity(patches.len());
    for p in patches {
        let c = p.map(|q| eye.apply(q));
        if let Some(bad) = c.points().find(|q| !(q.z > 0.0)) {
            return Err(BoundsError::NonPositiveDepth { z: bad.z });
        }
        // Store w = -z so that the extent functions increase with every coordinate.
        cams.push(c.map(|q| Point3::new(q.x, q.y, -q.z)));
    }

    let ratio_x = |p: Point3| p.x.max(0.0) / -p.z;
    let ratio_y = |p: Point3| p.y.max(0.0) / -p.z;
    let flips: [(&dyn Fn(Point3) -> f64, fn(Point3) -> Point3); 4] = [
        (&ratio_x, |p| p),
        (&ratio_x, |p| Point3::new(0.0 - p.x, p.y, p.z)),
        (&ratio_y, |p| p),
        (&ratio_y, |p| Point3::new(p.x, 0.0 - p.y, p.z)),
    ];
    let mut m = 0.0f64;
    for (f, flip) in flips {
        for c in &cams {
            let q = BoundsQuery { f, m, depth };
            m = function_max(&q, &c.map(flip));
        }
    }
    Ok(2.0 * m.atan())
}
