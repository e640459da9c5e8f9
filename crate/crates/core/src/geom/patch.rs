use serde::{Deserialize, Serialize};

use super::point::{Box3, Point2, Point3};

/// Bicubic Bézier patch `σ(u, v) = Σ B_i(u) B_j(v) P_ij`, with `control[i][j] = P_ij`.
/// Planar patches carry `z = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Patch {
    pub control: [[Point3; 4]; 4],
    /// `+1` when the patch normal agrees with the source curve's orientation, `-1` otherwise.
    pub orientation: i8,
}

fn cubic3(p: [Point3; 4], t: f64) -> Point3 {
    let a = p[0].lerp(p[1], t);
    let b = p[1].lerp(p[2], t);
    let c = p[2].lerp(p[3], t);
    a.lerp(b, t).lerp(b.lerp(c, t), t)
}

fn cubic3_deriv(p: [Point3; 4], t: f64) -> Point3 {
    let s = 1.0 - t;
    ((p[1] - p[0]) * (s * s) + (p[2] - p[1]) * (2.0 * s * t) + (p[3] - p[2]) * (t * t)) * 3.0
}

fn split3(p: [Point3; 4], t: f64) -> ([Point3; 4], [Point3; 4]) {
    let a = p[0].lerp(p[1], t);
    let b = p[1].lerp(p[2], t);
    let c = p[2].lerp(p[3], t);
    let ab = a.lerp(b, t);
    let bc = b.lerp(c, t);
    let m = ab.lerp(bc, t);
    ([p[0], a, ab, m], [m, bc, c, p[3]])
}

impl Patch {
    pub fn new(control: [[Point3; 4]; 4]) -> Self {
        Self { control, orientation: 1 }
    }

    pub fn from_planar(control: [[Point2; 4]; 4]) -> Self {
        Self::new(control.map(|row| row.map(Point2::to_3d)))
    }

    pub fn p(&self, i: usize, j: usize) -> Point3 {
        self.control[i][j]
    }

    /// Column of control points with fixed `j` (a curve in `u`).
    fn u_curve(&self, j: usize) -> [Point3; 4] {
        [self.control[0][j], self.control[1][j], self.control[2][j], self.control[3][j]]
    }

    pub fn points(&self) -> impl Iterator<Item = Point3> + '_ {
        self.control.iter().flatten().copied()
    }

    /// The four corner nodes in counterclockwise parameter order:
    /// `P00, P30, P33, P03`.
    pub fn corners(&self) -> [Point3; 4] {
        [self.control[0][0], self.control[3][0], self.control[3][3], self.control[0][3]]
    }

    pub fn is_finite(&self) -> bool {
        self.points().all(Point3::is_finite)
    }

    pub fn eval(&self, u: f64, v: f64) -> Point3 {
        let rows = self.control.map(|row| cubic3(row, v));
        cubic3(rows, u)
    }

    pub fn deriv_u(&self, u: f64, v: f64) -> Point3 {
        let rows = self.control.map(|row| cubic3(row, v));
        cubic3_deriv(rows, u)
    }

    pub fn deriv_v(&self, u: f64, v: f64) -> Point3 {
        let cols = [0, 1, 2, 3].map(|j| cubic3(self.u_curve(j), u));
        cubic3_deriv(cols, v)
    }

    /// Splits at `u = t` into the parts `u <= t` and `u >= t`.
    pub fn split_u(&self, t: f64) -> (Patch, Patch) {
        let mut lo = self.control;
        let mut hi = self.control;
        for j in 0..4 {
            let (l, r) = split3(self.u_curve(j), t);
            for i in 0..4 {
                lo[i][j] = l[i];
                hi[i][j] = r[i];
            }
        }
        (Patch { control: lo, ..*self }, Patch { control: hi, ..*self })
    }

    /// Splits at `v = t` into the parts `v <= t` and `v >= t`.
    pub fn split_v(&self, t: f64) -> (Patch, Patch) {
        let mut lo = self.control;
        let mut hi = self.control;
        for i in 0..4 {
            let (l, r) = split3(self.control[i], t);
            lo[i] = l;
            hi[i] = r;
        }
        (Patch { control: lo, ..*self }, Patch { control: hi, ..*self })
    }

    /// The four quarter patches along `u = 1/2` and `v = 1/2`, ordered
    /// `[u low v low, u high v low, u low v high, u high v high]`.
    pub fn subdivide(&self) -> [Patch; 4] {
        let (a, b) = self.split_u(0.5);
        let (a0, a1) = a.split_v(0.5);
        let (b0, b1) = b.split_v(0.5);
        [a0, b0, a1, b1]
    }

    pub fn control_box(&self) -> Box3 {
        Box3::from_points(self.points())
    }

    pub fn map(&self, f: impl Fn(Point3) -> Point3) -> Patch {
        Patch { control: self.control.map(|row| row.map(&f)), orientation: self.orientation }
    }
}

/// Quarter patches of `patch` split along its parametric midlines.
pub fn subdivide_patch(patch: &Patch) -> [Patch; 4] {
    patch.subdivide()
}
