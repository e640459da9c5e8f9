//! Independent oracles shared by the integration tests. Nothing here calls the
//! library's evaluation, winding or intersection code; curves are evaluated by
//! expanding the Bernstein polynomials directly and winding numbers come from
//! plain polygon crossing counts.
#![allow(dead_code)]

use geokit::geom::{ClosedCurve, CubicSegment, Patch, Point2, Point3};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn p2(x: f64, y: f64) -> Point2 {
    Point2::new(x, y)
}

pub fn bern3(i: usize, t: f64) -> f64 {
    let c = [1.0, 3.0, 3.0, 1.0][i];
    c * t.powi(i as i32) * (1.0 - t).powi(3 - i as i32)
}

/// Direct Bernstein sum, no de Casteljau.
pub fn bezier(seg: &CubicSegment, t: f64) -> Point2 {
    let p = seg.points();
    let (mut x, mut y) = (0.0, 0.0);
    for (i, q) in p.iter().enumerate() {
        let b = bern3(i, t);
        x += b * q.x;
        y += b * q.y;
    }
    Point2::new(x, y)
}

pub fn bezier_patch(p: &Patch, u: f64, v: f64) -> Point3 {
    let (mut x, mut y, mut z) = (0.0, 0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            let b = bern3(i, u) * bern3(j, v);
            let q = p.control[i][j];
            x += b * q.x;
            y += b * q.y;
            z += b * q.z;
        }
    }
    Point3::new(x, y, z)
}

/// Polygon through `chords` equal parameter steps per segment.
pub fn flatten(curve: &ClosedCurve, chords: usize) -> Vec<Point2> {
    let mut out = Vec::with_capacity(curve.len() * chords);
    for s in curve.segments() {
        for k in 0..chords {
            out.push(bezier(s, k as f64 / chords as f64));
        }
    }
    out
}

/// Crossing-number winding of a closed polygon (upward crossings to the right
/// of `z` count +1, downward ones -1).
pub fn polygon_winding(poly: &[Point2], z: Point2) -> i32 {
    let mut w = 0;
    for k in 0..poly.len() {
        let a = poly[k];
        let b = poly[(k + 1) % poly.len()];
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

pub fn oracle_winding(curves: &[ClosedCurve], z: Point2, chords: usize) -> i32 {
    curves.iter().map(|c| polygon_winding(&flatten(c, chords), z)).sum()
}

pub fn dist_to_polygon(poly: &[Point2], z: Point2) -> f64 {
    let mut best = f64::INFINITY;
    for k in 0..poly.len() {
        let a = poly[k];
        let b = poly[(k + 1) % poly.len()];
        let d = b - a;
        let len2 = d.x * d.x + d.y * d.y;
        let t = if len2 > 0.0 { ((z.x - a.x) * d.x + (z.y - a.y) * d.y) / len2 } else { 0.0 };
        let q = a + d * t.clamp(0.0, 1.0);
        best = best.min(((z.x - q.x).powi(2) + (z.y - q.y).powi(2)).sqrt());
    }
    best
}

/// Shoelace area of a dense flattening.
pub fn polygon_area(poly: &[Point2]) -> f64 {
    let mut a = 0.0;
    for k in 0..poly.len() {
        let p = poly[k];
        let q = poly[(k + 1) % poly.len()];
        a += p.x * q.y - q.x * p.y;
    }
    0.5 * a
}

/// Does segment ab properly cross cd (plain floating point, for test fixtures)?
fn segments_cross(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let o = |p: Point2, q: Point2, r: Point2| (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    let (d1, d2) = (o(a, b, c), o(a, b, d));
    let (d3, d4) = (o(c, d, a), o(c, d, b));
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// Brute-force simplicity check on a flattening: no two non-adjacent edges cross.
pub fn polygon_is_simple(poly: &[Point2]) -> bool {
    let n = poly.len();
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if segments_cross(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]) {
                return false;
            }
        }
    }
    true
}

/// Random star-shaped closed curve around the origin. Every segment's control
/// points stay inside its own angular wedge, so distinct segments cannot meet;
/// candidates whose fine flattening crosses itself are redrawn.
pub fn random_star_curve(rng: &mut ChaCha8Rng, nseg: usize) -> ClosedCurve {
    loop {
        let mut angles: Vec<f64> = (0..nseg).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let gaps_ok = (0..nseg).all(|k| {
            let next = if k + 1 < nseg { angles[k + 1] } else { angles[0] + std::f64::consts::TAU };
            let g = next - angles[k];
            g > 0.2 && g < 2.5
        });
        if !gaps_ok {
            continue;
        }
        let radii: Vec<f64> = (0..nseg).map(|_| rng.gen_range(0.4..1.0)).collect();
        let polar = |a: f64, r: f64| Point2::new(r * a.cos(), r * a.sin());
        let nodes: Vec<Point2> = (0..nseg).map(|k| polar(angles[k], radii[k])).collect();
        let mut segs = Vec::with_capacity(nseg);
        for k in 0..nseg {
            let a0 = angles[k];
            let a1 = if k + 1 < nseg { angles[k + 1] } else { angles[0] + std::f64::consts::TAU };
            let c1 = polar(a0 + (a1 - a0) * rng.gen_range(0.15..0.45), rng.gen_range(0.3..1.1));
            let c2 = polar(a0 + (a1 - a0) * rng.gen_range(0.55..0.85), rng.gen_range(0.3..1.1));
            segs.push(CubicSegment::new(nodes[k], c1, c2, nodes[(k + 1) % nseg]));
        }
        let c = ClosedCurve::new(segs).expect("nodes shared by construction");
        if polygon_is_simple(&flatten(&c, 64)) {
            return c;
        }
    }
}

pub fn random_patch(rng: &mut ChaCha8Rng, z_range: (f64, f64)) -> Patch {
    let mut c = [[Point3::default(); 4]; 4];
    for (i, row) in c.iter_mut().enumerate() {
        for (j, p) in row.iter_mut().enumerate() {
            *p = Point3::new(
                i as f64 / 3.0 + rng.gen_range(-0.3..0.3),
                j as f64 / 3.0 + rng.gen_range(-0.3..0.3),
                rng.gen_range(z_range.0..z_range.1),
            );
        }
    }
    Patch::new(c)
}

pub fn random_planar_patch(rng: &mut ChaCha8Rng) -> Patch {
    let mut p = random_patch(rng, (0.0, 1.0));
    for row in p.control.iter_mut() {
        for q in row.iter_mut() {
            q.z = 0.0;
        }
    }
    p
}

pub fn polygon(points: &[(f64, f64)]) -> ClosedCurve {
    let pts: Vec<Point2> = points.iter().map(|&(x, y)| Point2::new(x, y)).collect();
    ClosedCurve::polygon(&pts).unwrap()
}

pub fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> ClosedCurve {
    polygon(&[(x0, y0), (x1, y0), (x1, y1), (x0, y1)])
}

/// Circle of `n` arcs with the tangent-length constant for that arc angle.
pub fn circle(cx: f64, cy: f64, r: f64, n: usize) -> ClosedCurve {
    let th = std::f64::consts::TAU / n as f64;
    let k = 4.0 / 3.0 * (th / 4.0).tan();
    let node = |i: usize| {
        let a = th * (i % n) as f64;
        (a.cos(), a.sin())
    };
    let segs = (0..n)
        .map(|i| {
            let (ax, ay) = node(i);
            let (bx, by) = node(i + 1);
            let s = |x: f64, y: f64| Point2::new(cx + r * x, cy + r * y);
            CubicSegment::new(s(ax, ay), s(ax - k * ay, ay + k * ax), s(bx + k * by, by - k * bx), s(bx, by))
        })
        .collect();
    ClosedCurve::new(segs).unwrap()
}

/// Samples `n` points uniformly in the box, rejecting those within `margin` of
/// any of the given polygons.
pub fn sample_points(
    rng: &mut ChaCha8Rng,
    n: usize,
    lo: Point2,
    hi: Point2,
    avoid: &[Vec<Point2>],
    margin: f64,
) -> Vec<Point2> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let z = Point2::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        if avoid.iter().all(|poly| dist_to_polygon(poly, z) > margin) {
            out.push(z);
        }
    }
    out
}

pub fn load_outline(name: &str) -> Vec<ClosedCurve> {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    geokit::cli::input::load_curves(std::path::Path::new(&path)).unwrap()
}

/// Exact signed area: each segment's `½∫(x y' - y x') dt`, integrated term by
/// term in the power basis.
pub fn exact_area(curve: &ClosedCurve) -> f64 {
    let power = |a: f64, b: f64, c: f64, d: f64| [a, 3.0 * (b - a), 3.0 * (a - 2.0 * b + c), d - a + 3.0 * (b - c)];
    let mut total = 0.0;
    for s in curve.segments() {
        let x = power(s.p0.x, s.p1.x, s.p2.x, s.p3.x);
        let y = power(s.p0.y, s.p1.y, s.p2.y, s.p3.y);
        for i in 0..4 {
            for j in 1..4 {
                let w = j as f64 / (i + j) as f64;
                total += 0.5 * w * (x[i] * y[j] - y[i] * x[j]);
            }
        }
    }
    total
}

/// Jacobian `σ_u × σ_v` of a planar patch from Bernstein derivative sums.
pub fn oracle_jacobian(p: &Patch, u: f64, v: f64) -> f64 {
    let db = |i: usize, t: f64| {
        // d/dt of the cubic Bernstein polynomial B_i.
        let b2 = |k: usize| if k > 2 { 0.0 } else { [1.0, 2.0, 1.0][k] * t.powi(k as i32) * (1.0 - t).powi(2 - k as i32) };
        let lo = if i >= 1 { b2(i - 1) } else { 0.0 };
        3.0 * (lo - b2(i))
    };
    let (mut xu, mut yu, mut xv, mut yv) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            let q = p.control[i][j];
            let (a, b) = (db(i, u) * bern3(j, v), bern3(i, u) * db(j, v));
            xu += a * q.x;
            yu += a * q.y;
            xv += b * q.x;
            yv += b * q.y;
        }
    }
    xu * yv - yu * xv
}

/// Unit square with every edge's interior control points jittered by up to
/// `amp`; not necessarily simple.
pub fn jittered_square(rng: &mut ChaCha8Rng, amp: f64) -> ClosedCurve {
    let corners = [p2(0.0, 0.0), p2(1.0, 0.0), p2(1.0, 1.0), p2(0.0, 1.0)];
    let segs = (0..4)
        .map(|k| {
            let (a, b) = (corners[k], corners[(k + 1) % 4]);
            let mut jitter = || p2(rng.gen_range(-amp..amp), rng.gen_range(-amp..amp));
            CubicSegment::new(a, a.lerp(b, 1.0 / 3.0) + jitter(), a.lerp(b, 2.0 / 3.0) + jitter(), b)
        })
        .collect();
    ClosedCurve::new(segs).unwrap()
}

/// Bilinearly blended Coons surface of a 4-segment boundary, evaluated from its
/// defining sum.
pub fn coons_oracle(curve: &ClosedCurve, u: f64, v: f64) -> Point2 {
    let s = curve.segments();
    let c0 = bezier(&s[0], u);
    let c1 = bezier(&s[2], 1.0 - u);
    let d0 = bezier(&s[3], 1.0 - v);
    let d1 = bezier(&s[1], v);
    let (p00, p10, p11, p01) = (s[0].p0, s[1].p0, s[2].p0, s[3].p0);
    let ruled = c0 * (1.0 - v) + c1 * v + d0 * (1.0 - u) + d1 * u;
    let bilinear = p00 * ((1.0 - u) * (1.0 - v)) + p10 * (u * (1.0 - v)) + p01 * ((1.0 - u) * v) + p11 * (u * v);
    ruled - bilinear
}
