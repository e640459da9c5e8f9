use super::point::Point3;

/// Affine map `p -> A p + t` stored row-major as a 3x4 matrix `[A | t]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine3 {
    pub m: [[f64; 4]; 3],
}

impl Affine3 {
    pub const IDENTITY: Affine3 = Affine3 { m: [[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]] };

    pub fn from_row_major(v: [f64; 12]) -> Self {
        Self { m: [[v[0], v[1], v[2], v[3]], [v[4], v[5], v[6], v[7]], [v[8], v[9], v[10], v[11]]] }
    }

    pub fn translation(t: Point3) -> Self {
        let mut a = Self::IDENTITY;
        a.m[0][3] = t.x;
        a.m[1][3] = t.y;
        a.m[2][3] = t.z;
        a
    }

    pub fn scaling(s: f64) -> Self {
        let mut a = Self::IDENTITY;
        for i in 0..3 {
            a.m[i][i] = s;
        }
        a
    }

    pub fn apply(&self, p: Point3) -> Point3 {
        let r = |k: usize| self.m[k][0] * p.x + self.m[k][1] * p.y + self.m[k][2] * p.z + self.m[k][3];
        Point3::new(r(0), r(1), r(2))
    }

    /// Linear part applied to a direction.
    pub fn apply_vector(&self, v: Point3) -> Point3 {
        let r = |k: usize| self.m[k][0] * v.x + self.m[k][1] * v.y + self.m[k][2] * v.z;
        Point3::new(r(0), r(1), r(2))
    }

    pub fn determinant(&self) -> f64 {
        let col = |j: usize| Point3::new(self.m[0][j], self.m[1][j], self.m[2][j]);
        col(0).dot(col(1).cross(col(2)))
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|v| v.is_finite())
    }

    /// Scale factor when the linear part is a rotation (or reflection) times a
    /// uniform scale, within a relative tolerance.
    pub fn similarity_scale(&self, rel_tol: f64) -> Option<f64> {
        let col = |j: usize| Point3::new(self.m[0][j], self.m[1][j], self.m[2][j]);
        let cols = [col(0), col(1), col(2)];
        let s2 = cols[0].dot(cols[0]);
        if !(s2 > 0.0) || !self.is_finite() {
            return None;
        }
        for i in 0..3 {
            if (cols[i].dot(cols[i]) - s2).abs() > rel_tol * s2 {
                return None;
            }
            for j in (i + 1)..3 {
                if cols[i].dot(cols[j]).abs() > rel_tol * s2 {
                    return None;
                }
            }
        }
        Some(s2.sqrt())
    }
}
