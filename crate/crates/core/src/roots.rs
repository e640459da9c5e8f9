//! Real roots of polynomials up to degree four.
//!
//! Coefficients are given in ascending order (`c[0] + c[1] x + ...`). The
//! quartic solver uses Neumark's factorization into two quadratics via a
//! resolvent cubic; every root is polished with a few guarded Newton steps
//! against the original polynomial.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootsError {
    #[error("polynomial has effective degree 0")]
    ConstantPolynomial,
    #[error("polynomial degree {0} exceeds the solver's maximum of {1}")]
    DegreeTooHigh(usize, usize),
    #[error("non-finite coefficient")]
    NonFinite,
}

/// Leading coefficients below this fraction of the largest magnitude are dropped.
pub const DEGREE_REDUCTION_REL: f64 = 1e-14;
/// Roots closer than this (relative to `max(1, |r|)`) are reported once.
pub const CLUSTER_TOL: f64 = 1e-7;
/// Roots within this distance of 0 or 1 are excluded by [`roots_in_open_unit_interval`].
pub const UNIT_BOUNDARY_TOL: f64 = 1e-12;

const NEWTON_STEPS: usize = 3;

/// Coefficient vector of a polynomial of degree at most four, ascending order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyCoeffs {
    c: [f64; 5],
    degree: usize,
}

impl PolyCoeffs {
    pub fn new(coeffs: &[f64]) -> Result<Self, RootsError> {
        if coeffs.len() > 5 {
            let nonzero = coeffs[5..].iter().any(|v| *v != 0.0);
            if nonzero {
                return Err(RootsError::DegreeTooHigh(coeffs.len() - 1, 4));
            }
        }
        if coeffs.iter().any(|v| !v.is_finite()) {
            return Err(RootsError::NonFinite);
        }
        let mut c = [0.0; 5];
        for (dst, src) in c.iter_mut().zip(coeffs) {
            *dst = *src;
        }
        let scale = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut degree = 4;
        while degree > 0 && c[degree].abs() <= DEGREE_REDUCTION_REL * scale {
            c[degree] = 0.0;
            degree -= 1;
        }
        Ok(Self { c, degree })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c[..=self.degree]
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.c[..=self.degree].iter().rev().fold(0.0, |acc, v| acc * x + v)
    }

    pub fn eval_derivative(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for k in (1..=self.degree).rev() {
            acc = acc * x + k as f64 * self.c[k];
        }
        acc
    }

    /// Guarded Newton polishing; a step is kept only if it does not increase |p|.
    fn polish(&self, mut x: f64) -> f64 {
        let mut fx = self.eval(x);
        for _ in 0..NEWTON_STEPS {
            if fx == 0.0 {
                break;
            }
            let d = self.eval_derivative(x);
            if d.abs() <= f64::MIN_POSITIVE || !d.is_finite() {
                break;
            }
            let xn = x - fx / d;
            let fxn = self.eval(xn);
            if !xn.is_finite() || fxn.abs() > fx.abs() {
                break;
            }
            x = xn;
            fx = fxn;
        }
        x
    }

    fn finish(&self, roots: Vec<f64>) -> Vec<f64> {
        let mut out: Vec<f64> = roots
            .into_iter()
            .filter(|r| r.is_finite())
            .map(|r| self.polish(r))
            .collect();
        out.sort_by(|a, b| a.total_cmp(b));
        cluster(out)
    }
}

fn cluster(sorted: Vec<f64>) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::with_capacity(sorted.len());
    let mut group: Vec<f64> = Vec::new();
    for r in sorted {
        if let Some(last) = group.last() {
            if (r - last).abs() > CLUSTER_TOL * last.abs().max(1.0) {
                out.push(group.iter().sum::<f64>() / group.len() as f64);
                group.clear();
            }
        }
        group.push(r);
    }
    if !group.is_empty() {
        out.push(group.iter().sum::<f64>() / group.len() as f64);
    }
    out
}

/// Real roots of a polynomial of degree at most two, sorted ascending.
pub fn solve_quadratic(coeffs: &[f64]) -> Result<Vec<f64>, RootsError> {
    let p = PolyCoeffs::new(coeffs)?;
    if p.degree > 2 {
        return Err(RootsError::DegreeTooHigh(p.degree, 2));
    }
    solve(&p)
}

/// Real roots of a polynomial of degree at most three, sorted ascending.
pub fn solve_cubic(coeffs: &[f64]) -> Result<Vec<f64>, RootsError> {
    let p = PolyCoeffs::new(coeffs)?;
    if p.degree > 3 {
        return Err(RootsError::DegreeTooHigh(p.degree, 3));
    }
    solve(&p)
}

/// Real roots of a polynomial of degree at most four, sorted ascending.
pub fn solve_quartic(coeffs: &[f64]) -> Result<Vec<f64>, RootsError> {
    let p = PolyCoeffs::new(coeffs)?;
    solve(&p)
}

/// Roots strictly inside (0, 1); constant polynomials have none.
pub fn roots_in_open_unit_interval(coeffs: &[f64]) -> Vec<f64> {
    match solve_quartic(coeffs) {
        Ok(rs) => rs
            .into_iter()
            .filter(|r| *r > UNIT_BOUNDARY_TOL && *r < 1.0 - UNIT_BOUNDARY_TOL)
            .collect(),
        Err(_) => Vec::new(),
    }
}

fn solve(p: &PolyCoeffs) -> Result<Vec<f64>, RootsError> {
    let c = p.c;
    let raw = match p.degree {
        0 => return Err(RootsError::ConstantPolynomial),
        1 => vec![-c[0] / c[1]],
        2 => quadratic_monic(c[1] / c[2], c[0] / c[2]),
        3 => cubic_monic(c[2] / c[3], c[1] / c[3], c[0] / c[3]),
        _ => quartic_monic(c[3] / c[4], c[2] / c[4], c[1] / c[4], c[0] / c[4]),
    };
    Ok(p.finish(raw))
}

/// Roots of `x^2 + b x + c` using the cancellation-free form.
fn quadratic_monic(b: f64, c: f64) -> Vec<f64> {
    let mut disc = b * b - 4.0 * c;
    if disc < 0.0 {
        // A discriminant lost in rounding is a double root, not a complex pair.
        if -disc <= 4.0 * f64::EPSILON * (b * b + 4.0 * c.abs()) {
            disc = 0.0;
        } else {
            return Vec::new();
        }
    }
    let sq = disc.sqrt();
    let q = -0.5 * (b + if b >= 0.0 { sq } else { -sq });
    if q == 0.0 {
        return vec![0.0];
    }
    let r1 = q;
    let r2 = c / q;
    if r1 <= r2 {
        vec![r1, r2]
    } else {
        vec![r2, r1]
    }
}

/// Roots of `x^3 + a x^2 + b x + c`: trigonometric form for three real roots,
/// Cardano otherwise.
fn cubic_monic(a: f64, b: f64, c: f64) -> Vec<f64> {
    let shift = a / 3.0;
    let p = b - a * shift;
    let q = c - b * shift + 2.0 * shift * shift * shift;
    if p == 0.0 && q == 0.0 {
        return vec![-shift];
    }
    let half_q = 0.5 * q;
    let third_p = p / 3.0;
    let disc = half_q * half_q + third_p * third_p * third_p;
    if disc > 0.0 {
        let sd = disc.sqrt();
        let u = (-half_q - half_q.signum() * sd).cbrt();
        let v = if u != 0.0 { -third_p / u } else { 0.0 };
        vec![u + v - shift]
    } else if third_p == 0.0 {
        vec![-shift]
    } else {
        let r = (-third_p).sqrt();
        let cos_phi = (-half_q / (r * r * r)).clamp(-1.0, 1.0);
        let phi = cos_phi.acos();
        let two_r = 2.0 * r;
        (0..3)
            .map(|k| two_r * ((phi + 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos() - shift)
            .collect()
    }
}

/// Roots of `x^4 + a x^3 + b x^2 + c x + d` by Neumark's method.
///
/// The resolvent cubic `y^3 - 2b y^2 + (b^2 + ac - 4d) y + (c^2 - abc + a^2 d)`
/// gives `y = G g` for a factorization `(x^2 + G x + H)(x^2 + g x + h)`. Among
/// the real resolvent roots admitting a real factorization, the one with the
/// largest `a^2 - 4y` is tried first.
fn quartic_monic(a: f64, b: f64, c: f64, d: f64) -> Vec<f64> {
    if d == 0.0 {
        let mut roots = cubic_monic(a, b, c);
        roots.push(0.0);
        return roots;
    }
    let resolvent = cubic_monic(-2.0 * b, b * b + a * c - 4.0 * d, c * c - a * b * c + a * a * d);
    let mut candidates: Vec<(f64, f64, f64)> = resolvent
        .into_iter()
        .map(|y| (y, a * a - 4.0 * y, (b - y) * (b - y) - 4.0 * d))
        .collect();
    candidates.sort_by(|l, r| r.1.total_cmp(&l.1));

    let scale = 1.0 + a.abs().max(b.abs()).max(c.abs()).max(d.abs());
    let residual = |roots: &[f64]| {
        roots
            .iter()
            .map(|x| (((x + a) * x + b) * x + c) * x + d)
            .fold(0.0f64, |m, v| m.max(v.abs()))
    };

    let mut best: Option<(f64, Vec<f64>)> = None;
    for (y, n, m) in candidates {
        let n_err = a * a + 4.0 * y.abs();
        let m_err = (b - y) * (b - y) + 4.0 * d.abs();
        let tol = 64.0 * f64::EPSILON;
        if n < -tol * n_err || m < -tol * m_err {
            continue;
        }
        let (n, m) = (n.max(0.0), m.max(0.0));
        let g1 = 0.5 * a;
        let h1 = 0.5 * (b - y);
        let (g2, h2) = if m * n_err < n * m_err {
            let sn = n.sqrt();
            (0.5 * sn, if sn == 0.0 { 0.0 } else { (a * h1 - c) / sn })
        } else {
            let sm = m.sqrt();
            (if sm == 0.0 { 0.0 } else { (a * h1 - c) / sm }, 0.5 * sm)
        };
        let (big_g, small_g) = split_pair(g1, g2, y);
        let (big_h, small_h) = split_pair(h1, h2, d);
        let mut roots = quadratic_monic(big_g, big_h);
        roots.extend(quadratic_monic(small_g, small_h));
        let res = residual(&roots);
        if res <= 1e-8 * scale {
            return roots;
        }
        if best.as_ref().is_none_or(|(r, _)| res < *r) {
            best = Some((res, roots));
        }
    }
    best.map(|(_, r)| r).unwrap_or_default()
}

/// Returns `(s1 + s2, s1 - s2)` computed so the smaller-magnitude member is
/// obtained from the product `prod = (s1 + s2)(s1 - s2)` when that avoids cancellation.
fn split_pair(s1: f64, s2: f64, prod: f64) -> (f64, f64) {
    if s1 == 0.0 && s2 == 0.0 {
        return (0.0, 0.0);
    }
    if s1.signum() == s2.signum() || s2 == 0.0 {
        let big = s1 + s2;
        (big, if big != 0.0 { prod / big } else { s1 - s2 })
    } else {
        let small = s1 - s2;
        (if small != 0.0 { prod / small } else { s1 + s2 }, small)
    }
}
