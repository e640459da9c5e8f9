//! Robust planar orientation test.
//!
//! A floating-point evaluation with a forward error bound decides almost every
//! query. When the determinant falls inside the bound, the inputs are rescaled to
//! integers (every finite `f64` is `m * 2^e`) and the determinant is evaluated
//! exactly with arbitrary-precision integers.

use num_bigint::{BigInt, Sign};

use crate::geom::Point2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `c` lies to the left of the directed line `a -> b`.
    CounterClockwise,
    /// `c` lies to the right of the directed line `a -> b`.
    Clockwise,
    Colinear,
}

impl Orientation {
    pub fn sign(self) -> i32 {
        match self {
            Orientation::CounterClockwise => 1,
            Orientation::Clockwise => -1,
            Orientation::Colinear => 0,
        }
    }
}

// (3 + 16 eps) eps with eps = 2^-53
const CCW_ERRBOUND_A: f64 = (3.0 + 16.0 * f64::EPSILON / 2.0) * (f64::EPSILON / 2.0);

/// Orientation of `c` relative to the directed line through `a` and `b`.
pub fn orient2d(a: Point2, b: Point2, c: Point2) -> Orientation {
    let detleft = (a.x - c.x) * (b.y - c.y);
    let detright = (a.y - c.y) * (b.x - c.x);
    let det = detleft - detright;

    let detsum = if detleft > 0.0 {
        if detright <= 0.0 {
            return from_sign(det);
        }
        detleft + detright
    } else if detleft < 0.0 {
        if detright >= 0.0 {
            return from_sign(det);
        }
        -detleft - detright
    } else {
        return from_sign(det);
    };

    let errbound = CCW_ERRBOUND_A * detsum;
    if det >= errbound || -det >= errbound {
        return from_sign(det);
    }
    orient2d_exact(a, b, c)
}

fn from_sign(v: f64) -> Orientation {
    if v > 0.0 {
        Orientation::CounterClockwise
    } else if v < 0.0 {
        Orientation::Clockwise
    } else {
        Orientation::Colinear
    }
}

/// Decompose a finite double into `(mantissa, exponent)` with `v = mantissa * 2^exponent`.
fn decompose(v: f64) -> (i64, i32) {
    let bits = v.to_bits();
    let sign: i64 = if bits >> 63 == 0 { 1 } else { -1 };
    let exp_bits = ((bits >> 52) & 0x7ff) as i32;
    let frac = (bits & 0x000f_ffff_ffff_ffff) as i64;
    if exp_bits == 0 {
        (sign * frac, -1074)
    } else {
        (sign * (frac | 0x0010_0000_0000_0000), exp_bits - 1075)
    }
}

/// Exact orientation via big-integer arithmetic on rescaled coordinates.
pub fn orient2d_exact(a: Point2, b: Point2, c: Point2) -> Orientation {
    let vals = [a.x, a.y, b.x, b.y, c.x, c.y];
    let parts: Vec<(i64, i32)> = vals.iter().map(|v| decompose(*v)).collect();
    let emin = parts
        .iter()
        .filter(|(m, _)| *m != 0)
        .map(|(_, e)| *e)
        .min()
        .unwrap_or(0);
    let big: Vec<BigInt> = parts
        .iter()
        .map(|(m, e)| {
            if *m == 0 {
                BigInt::from(0)
            } else {
                BigInt::from(*m) << ((*e - emin) as usize)
            }
        })
        .collect();
    let (ax, ay, bx, by, cx, cy) = (&big[0], &big[1], &big[2], &big[3], &big[4], &big[5]);
    let det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx);
    match det.sign() {
        Sign::Plus => Orientation::CounterClockwise,
        Sign::Minus => Orientation::Clockwise,
        Sign::NoSign => Orientation::Colinear,
    }
}
