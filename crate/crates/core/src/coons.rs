//! Coons patches over closed curves of at most four segments, the Jacobian sign
//! tests used to detect folded patches, and recursive splitting until every
//! piece is nondegenerate.

use std::collections::VecDeque;

use thiserror::Error;

use crate::bezulate::{bezulate, BezulateError, BezulateLimits};
use crate::geom::{intersections, subpath, ClosedCurve, CubicSegment, Patch, Point2, Point3};
use crate::roots;

/// Values of `T_pq` within this fraction of `max |T_pq|` count as zero.
pub const T_ZERO_REL: f64 = 1e-12;
/// A node is reflex when the sine of its turning angle is below `-REFLEX_SIN_TOL`.
pub const REFLEX_SIN_TOL: f64 = 1e-9;
/// Side length of the Jacobian probe grid.
pub const PROBE_GRID: usize = 41;
pub const MAX_SPLIT_DEPTH: u32 = 16;
/// Boundary degeneracies this close (in edge parameter) to a corner are cut at a
/// side midpoint instead; cutting right next to a corner makes almost no progress.
pub const CORNER_GUARD: f64 = 0.02;

/// Split pieces must keep at least this fraction of the parent's area.
const SLIVER_AREA_REL: f64 = 1e-6;
const PREPARE_BUDGET: usize = 512;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoonsError {
    #[error("a Coons patch needs exactly 4 segments, got {0}")]
    NotFourSegments(usize),
    #[error("cannot pad a curve with {0} segments to four")]
    TooManySegments(usize),
    #[error("curve encloses no area")]
    ZeroArea,
    #[error("bisector from reflex node {node} does not meet the curve")]
    BisectorMiss { node: usize },
    #[error("edge {edge} starts or ends at a reflex corner")]
    ReflexCorner { edge: usize },
    #[error("patch still degenerate after {depth} splits")]
    SplitDepthExceeded { depth: u32 },
    #[error("no interior split line found for a degenerate patch")]
    SplitFailed,
    #[error("reflex splitting did not settle")]
    ReflexLoop,
    #[error(transparent)]
    Bezulate(#[from] BezulateError),
}

// ---------------------------------------------------------------------------
// Reflex nodes

fn node_tangents(curve: &ClosedCurve, i: usize) -> Option<(Point2, Point2)> {
    let n = curve.len();
    let din = curve.segments()[(i + n - 1) % n].end_tangent()?;
    let dout = curve.segments()[i % n].start_tangent()?;
    Some((din, dout))
}

/// Interior angle (radians) of a counterclockwise curve at a node with incoming
/// direction `din` and outgoing direction `dout`.
pub fn interior_angle(din: Point2, dout: Point2) -> f64 {
    std::f64::consts::PI - din.cross(dout).atan2(din.dot(dout))
}

fn find_reflex(curve: &ClosedCurve) -> Option<usize> {
    (0..curve.len()).find(|&i| match node_tangents(curve, i) {
        Some((din, dout)) => din.cross(dout) < -REFLEX_SIN_TOL,
        None => false,
    })
}

fn param_gap(a: f64, b: f64, n: f64) -> f64 {
    let d = (a - b).rem_euclid(n);
    d.min(n - d)
}

/// Cuts `curve` along the ray from `origin` (at parameter `x_param`, node units)
/// in direction `dir` up to its first boundary hit.
fn split_along_ray(curve: &ClosedCurve, x_param: f64, origin: Point2, dir: Point2) -> Option<(ClosedCurve, ClosedCurve)> {
    let scale = curve.control_bbox().diagonal();
    let far = origin + dir * (2.0 * scale);
    let n = curve.len() as f64;
    let hits = intersections(curve, origin, far).ok()?;
    let first = hits
        .iter()
        .filter(|h| h.s > 1e-9 && h.point.distance(origin) > 1e-9 * scale && param_gap(h.param(), x_param, n) > 1e-7)
        .min_by(|a, b| a.s.total_cmp(&b.s))?;
    let (r, idx) = curve.insert_nodes(&[x_param, first.param()]);
    if idx[0] == idx[1] {
        return None;
    }
    let (x, y) = (r.node(idx[0]), r.node(idx[1]));
    let mut p1 = subpath(&r, idx[0], idx[1]).ok()?;
    p1.push(CubicSegment::line(y, x));
    let mut p2 = subpath(&r, idx[1], idx[0]).ok()?;
    p2.push(CubicSegment::line(x, y));
    let (p1, p2) = (ClosedCurve::new(p1).ok()?, ClosedCurve::new(p2).ok()?);
    // Refuse cuts that shave off a sliver; another cut line does better.
    let min_area = SLIVER_AREA_REL * curve.signed_area();
    (p1.signed_area() > min_area && p2.signed_area() > min_area).then_some((p1, p2))
}

fn split_at_reflex(curve: &ClosedCurve, i: usize) -> Result<(ClosedCurve, ClosedCurve), CoonsError> {
    let (din, dout) = node_tangents(curve, i).ok_or(CoonsError::BisectorMiss { node: i })?;
    let dir = dout.rotated(0.5 * interior_angle(din, dout));
    split_along_ray(curve, i as f64, curve.node(i), dir).ok_or(CoonsError::BisectorMiss { node: i })
}

/// Cuts the curve along interior angle bisectors until no node has an interior
/// angle above 180 degrees.
pub fn split_reflex_nodes(curve: &ClosedCurve) -> Result<Vec<ClosedCurve>, CoonsError> {
    let start = curve.without_nulls().ok_or(CoonsError::ZeroArea)?.to_ccw();
    let mut queue = VecDeque::from([start]);
    let mut out = Vec::new();
    let mut budget = PREPARE_BUDGET;
    while let Some(c) = queue.pop_front() {
        budget = budget.checked_sub(1).ok_or(CoonsError::ReflexLoop)?;
        match find_reflex(&c) {
            None => out.push(c),
            Some(i) => {
                let (a, b) = split_at_reflex(&c, i)?;
                queue.push_front(b);
                queue.push_front(a);
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Padding and patch construction

/// Brings a curve of 1-4 segments up to exactly four by inserting null segments.
pub fn pad_to_four(curve: &ClosedCurve) -> Result<ClosedCurve, CoonsError> {
    let segs = curve.segments();
    let node = |i: usize| curve.node(i);
    let padded = match segs.len() {
        4 => return Ok(curve.clone()),
        3 => {
            let widest = (0..3)
                .max_by(|&a, &b| {
                    let ang = |i| node_tangents(curve, i).map_or(0.0, |(din, dout)| interior_angle(din, dout));
                    ang(a).total_cmp(&ang(b))
                })
                .unwrap_or(0);
            let mut v = segs.to_vec();
            v.insert(widest, CubicSegment::null(node(widest)));
            v
        }
        2 => vec![CubicSegment::null(node(0)), segs[0], CubicSegment::null(node(1)), segs[1]],
        1 => {
            let (a, b) = segs[0].split_half();
            vec![CubicSegment::null(a.p0), a, CubicSegment::null(b.p0), b]
        }
        n => return Err(CoonsError::TooManySegments(n)),
    };
    Ok(ClosedCurve::new(padded).expect("padding preserves closure"))
}

/// Bicubic patch whose boundary is the given 4-segment curve and whose interior
/// control points reproduce the bilinearly blended Coons surface.
pub fn coons_patch(curve: &ClosedCurve) -> Result<Patch, CoonsError> {
    let s = curve.segments();
    if s.len() != 4 {
        return Err(CoonsError::NotFourSegments(s.len()));
    }
    let mut p = [[Point3::default(); 4]; 4];
    for k in 0..4 {
        p[k][0] = s[0].points()[k].to_3d();
        p[3][k] = s[1].points()[k].to_3d();
        p[3 - k][3] = s[2].points()[k].to_3d();
        p[0][3 - k] = s[3].points()[k].to_3d();
    }
    let ninth = 1.0 / 9.0;
    p[1][1] = (p[0][0] * -4.0 + (p[0][1] + p[1][0]) * 6.0 - (p[0][3] + p[3][0]) * 2.0 + (p[3][1] + p[1][3]) * 3.0
        - p[3][3])
        * ninth;
    p[1][2] = (p[0][3] * -4.0 + (p[0][2] + p[1][3]) * 6.0 - (p[0][0] + p[3][3]) * 2.0 + (p[3][2] + p[1][0]) * 3.0
        - p[3][0])
        * ninth;
    p[2][1] = (p[3][0] * -4.0 + (p[3][1] + p[2][0]) * 6.0 - (p[3][3] + p[0][0]) * 2.0 + (p[0][1] + p[2][3]) * 3.0
        - p[0][3])
        * ninth;
    p[2][2] = (p[3][3] * -4.0 + (p[3][2] + p[2][3]) * 6.0 - (p[3][0] + p[0][3]) * 2.0 + (p[0][2] + p[2][0]) * 3.0
        - p[0][0])
        * ninth;
    Ok(Patch::new(p))
}

// ---------------------------------------------------------------------------
// Jacobian and the sign tests

/// Planar Jacobian `σ_u × σ_v` (z components ignored).
pub fn jacobian(patch: &Patch, u: f64, v: f64) -> f64 {
    patch.deriv_u(u, v).xy().cross(patch.deriv_v(u, v).xy())
}

fn planar_scale(patch: &Patch) -> f64 {
    let b = patch.control_box();
    let d = b.max - b.min;
    d.x.hypot(d.y)
}

const BINOM2: [f64; 3] = [1.0, 2.0, 1.0];
const BINOM3: [f64; 4] = [1.0, 3.0, 3.0, 1.0];

/// Degree-(5, 5) Bernstein-like coefficients of the Jacobian:
/// `J(u, v) = Σ T_pq u^p v^q (1-u)^(5-p) (1-v)^(5-q)`.
pub fn tpq_table(patch: &Patch) -> [[f64; 6]; 6] {
    let p = |i: usize, j: usize| patch.control[i][j].xy();
    let mut t = [[0.0; 6]; 6];
    for i in 0..3 {
        for j in 0..4 {
            let u_ij = p(i + 1, j) - p(i, j);
            for k in 0..4 {
                for l in 0..3 {
                    let v_kl = p(k, l + 1) - p(k, l);
                    let w = BINOM2[i] * BINOM3[k] * BINOM3[j] * BINOM2[l];
                    t[i + k][j + l] += 9.0 * w * u_ij.cross(v_kl);
                }
            }
        }
    }
    t
}

/// Evaluates `Σ T_pq u^p v^q (1-u)^(5-p) (1-v)^(5-q)`.
pub fn reconstruct_jacobian(t: &[[f64; 6]; 6], u: f64, v: f64) -> f64 {
    let pw = |x: f64| {
        let mut out = [0.0; 6];
        for (k, o) in out.iter_mut().enumerate() {
            *o = x.powi(k as i32) * (1.0 - x).powi(5 - k as i32);
        }
        out
    };
    let (bu, bv) = (pw(u), pw(v));
    let mut acc = 0.0;
    for p in 0..6 {
        for q in 0..6 {
            acc += t[p][q] * bu[p] * bv[q];
        }
    }
    acc
}

/// Common strict sign of the nonzero `T_pq`, or `None` when signs are mixed or all vanish.
pub fn tpq_sign(patch: &Patch) -> Option<i8> {
    let t = tpq_table(patch);
    let big = t.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = T_ZERO_REL * big;
    let pos = t.iter().flatten().any(|v| *v > tol);
    let neg = t.iter().flatten().any(|v| *v < -tol);
    match (pos, neg) {
        (true, false) => Some(1),
        (false, true) => Some(-1),
        _ => None,
    }
}

/// Sufficient test: all `T_pq` share one strict sign (zeros are neutral).
pub fn is_nondegenerate(patch: &Patch) -> bool {
    tpq_sign(patch).is_some()
}

// ---------------------------------------------------------------------------
// Boundary scan

/// Coefficients (ascending powers of u) of `M_ij = (B_i'' B_j + B_i' B_j') / 3`.
pub const M_TABLE: [[[f64; 5]; 4]; 4] = [
    [
        [5.0, -20.0, 30.0, -20.0, 5.0],
        [-3.0, 24.0, -54.0, 48.0, -15.0],
        [0.0, -6.0, 27.0, -36.0, 15.0],
        [0.0, 0.0, -3.0, 8.0, -5.0],
    ],
    [
        [-7.0, 36.0, -66.0, 52.0, -15.0],
        [3.0, -36.0, 108.0, -120.0, 45.0],
        [0.0, 6.0, -45.0, 84.0, -45.0],
        [0.0, 0.0, 3.0, -16.0, 15.0],
    ],
    [
        [2.0, -18.0, 45.0, -44.0, 15.0],
        [0.0, 12.0, -63.0, 96.0, -45.0],
        [0.0, 0.0, 18.0, -60.0, 45.0],
        [0.0, 0.0, 0.0, 8.0, -15.0],
    ],
    [
        [0.0, 2.0, -9.0, 12.0, -5.0],
        [0.0, 0.0, 9.0, -24.0, 15.0],
        [0.0, 0.0, 0.0, 12.0, -15.0],
        [0.0, 0.0, 0.0, 0.0, 5.0],
    ],
];

/// Power-basis coefficients of the cubic Bernstein polynomials and their derivatives.
const BERN: [[f64; 4]; 4] = [[1.0, -3.0, 3.0, -1.0], [0.0, 3.0, -6.0, 3.0], [0.0, 0.0, 3.0, -3.0], [0.0, 0.0, 0.0, 1.0]];
const BERN_D: [[f64; 3]; 4] = [[-3.0, 6.0, -3.0], [3.0, -12.0, 9.0], [0.0, 6.0, -9.0], [0.0, 0.0, 3.0]];

/// Control net re-indexed so that `edge` (0: v=0, 1: u=1, 2: v=1, 3: u=0, each
/// traversed counterclockwise) becomes the `v = 0` edge with increasing `u`.
pub fn edge_net(patch: &Patch, edge: usize) -> Patch {
    let mut q = *patch;
    for _ in 0..edge % 4 {
        let old = q.control;
        for i in 0..4 {
            for j in 0..4 {
                q.control[i][j] = old[3 - j][i];
            }
        }
    }
    q
}

fn edge_cross_terms(q: &Patch) -> [[f64; 4]; 4] {
    let mut c = [[0.0; 4]; 4];
    for (i, row) in c.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = q.control[i][0].xy().cross(q.control[j][1].xy() - q.control[j][0].xy());
        }
    }
    c
}

/// `f(u) = Σ B_i'(u) B_j(u) P_i0 × (P_j1 - P_j0)` on the given edge, as
/// ascending power-basis coefficients. `J(u, 0) = 3 f(u)` on that edge.
pub fn boundary_f(patch: &Patch, edge: usize) -> [f64; 6] {
    let c = edge_cross_terms(&edge_net(patch, edge));
    let mut f = [0.0; 6];
    for i in 0..4 {
        for j in 0..4 {
            for (a, da) in BERN_D[i].iter().enumerate() {
                for (b, bb) in BERN[j].iter().enumerate() {
                    f[a + b] += c[i][j] * da * bb;
                }
            }
        }
    }
    f
}

/// `f'(u)` on the given edge, assembled from the `M_ij` table.
pub fn boundary_fprime(patch: &Patch, edge: usize) -> [f64; 5] {
    let c = edge_cross_terms(&edge_net(patch, edge));
    let mut d = [0.0; 5];
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..5 {
                d[k] += 3.0 * c[i][j] * M_TABLE[i][j][k];
            }
        }
    }
    d
}

/// Most negative boundary Jacobian on `edge` among the interior critical points
/// of `f`, as `(u, J)` in the edge's counterclockwise parameter. `None` when the
/// Jacobian stays nonnegative along the edge.
pub fn boundary_degeneracy(patch: &Patch, edge: usize) -> Result<Option<(f64, f64)>, CoonsError> {
    let q = edge_net(patch, edge);
    let s2 = planar_scale(patch).powi(2);
    if jacobian(&q, 0.0, 0.0) < -1e-9 * s2 || jacobian(&q, 1.0, 0.0) < -1e-9 * s2 {
        return Err(CoonsError::ReflexCorner { edge });
    }
    let fp = boundary_fprime(patch, edge);
    let worst = roots::roots_in_open_unit_interval(&fp)
        .into_iter()
        .map(|u| (u, jacobian(&q, u, 0.0)))
        .filter(|(_, j)| *j < -1e-12 * s2)
        .min_by(|a, b| a.1.total_cmp(&b.1));
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoonsDiagnostics {
    pub t: [[f64; 6]; 6],
    /// `f` per edge, ascending powers.
    pub boundary_f_coeffs: [[f64; 6]; 4],
    /// `f'` per edge, ascending powers.
    pub boundary_fprime_coeffs: [[f64; 5]; 4],
    /// `(u, v, J)` at the smallest Jacobian on the probe grid.
    pub min_jacobian_probe: (f64, f64, f64),
}

pub fn diagnostics(patch: &Patch) -> CoonsDiagnostics {
    CoonsDiagnostics {
        t: tpq_table(patch),
        boundary_f_coeffs: [0, 1, 2, 3].map(|e| boundary_f(patch, e)),
        boundary_fprime_coeffs: [0, 1, 2, 3].map(|e| boundary_fprime(patch, e)),
        min_jacobian_probe: probe_min(patch),
    }
}

fn probe_min(patch: &Patch) -> (f64, f64, f64) {
    let m = (PROBE_GRID - 1) as f64;
    let mut best = (0.0, 0.0, f64::INFINITY);
    for a in 0..PROBE_GRID {
        for b in 0..PROBE_GRID {
            let (u, v) = (a as f64 / m, b as f64 / m);
            let j = jacobian(patch, u, v);
            if j < best.2 {
                best = (u, v, j);
            }
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Repair

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SplitStrategy {
    /// Split at the most negative boundary Jacobian when there is one.
    #[default]
    Quartic,
    /// Always split at the midpoint of the longest curved side.
    Midpoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepairOptions {
    pub strategy: SplitStrategy,
    /// Accept a patch with mixed `T_pq` signs when the boundary scan is clean and
    /// the Jacobian probe grid is strictly positive.
    pub probe_fallback: bool,
    pub max_depth: u32,
}

impl Default for RepairOptions {
    fn default() -> Self {
        Self { strategy: SplitStrategy::Quartic, probe_fallback: true, max_depth: MAX_SPLIT_DEPTH }
    }
}

/// How a kept patch was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    SignTest,
    ProbeGrid,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepairedPatch {
    pub patch: Patch,
    /// The 4-segment boundary the patch was built from.
    pub boundary: ClosedCurve,
    pub history: Vec<String>,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Repair {
    pub kept: Vec<RepairedPatch>,
    /// Nondegenerate pieces facing the wrong way.
    pub discarded: Vec<RepairedPatch>,
    /// Split lines, for diagnostics.
    pub cuts: Vec<CubicSegment>,
}

/// Splits a curve into ≤4-segment, reflex-free, counterclockwise pieces.
fn prepare(curve: &ClosedCurve) -> Result<Vec<(ClosedCurve, Vec<String>)>, CoonsError> {
    let start = curve.without_nulls().ok_or(CoonsError::ZeroArea)?.to_ccw();
    let mut queue = VecDeque::from([(start, Vec::<String>::new())]);
    let mut out = Vec::new();
    let mut budget = PREPARE_BUDGET;
    while let Some((c, hist)) = queue.pop_front() {
        budget = budget.checked_sub(1).ok_or(CoonsError::ReflexLoop)?;
        if c.len() > 4 {
            let pieces = bezulate(&c, BezulateLimits::default())?;
            for (k, piece) in pieces.curves.into_iter().enumerate().rev() {
                let mut h = hist.clone();
                h.push(format!("bezulate:{k}"));
                queue.push_front((piece, h));
            }
            continue;
        }
        match find_reflex(&c) {
            None => out.push((c, hist)),
            Some(i) => {
                let (a, b) = split_at_reflex(&c, i)?;
                let mut hb = hist.clone();
                hb.push(format!("reflex:{i}:1"));
                let mut ha = hist;
                ha.push(format!("reflex:{i}:0"));
                queue.push_front((b, hb));
                queue.push_front((a, ha));
            }
        }
    }
    Ok(out)
}

/// Builds patches for a region and splits degenerate ones until every kept
/// patch is certified nondegenerate.
pub fn make_nondegenerate(curve: &ClosedCurve, opts: RepairOptions) -> Result<Repair, CoonsError> {
    let mut out = Repair::default();
    repair(curve, 0, true, &[], opts, &mut out)?;
    Ok(out)
}

fn record(out: &mut Repair, patch: Patch, boundary: ClosedCurve, history: Vec<String>, certificate: Certificate, keep: bool) {
    let rec = RepairedPatch { patch, boundary, history, certificate };
    if keep {
        out.kept.push(rec);
    } else {
        out.discarded.push(rec);
    }
}

fn repair(
    curve: &ClosedCurve,
    depth: u32,
    scan_boundary: bool,
    history: &[String],
    opts: RepairOptions,
    out: &mut Repair,
) -> Result<(), CoonsError> {
    for (piece, steps) in prepare(curve)? {
        let mut hist = history.to_vec();
        hist.extend(steps);
        let padded = pad_to_four(&piece)?;
        let mut patch = coons_patch(&padded)?;
        match tpq_sign(&patch) {
            Some(1) => {
                record(out, patch, padded, hist, Certificate::SignTest, true);
                continue;
            }
            Some(_) => {
                patch.orientation = -1;
                record(out, patch, padded, hist, Certificate::SignTest, false);
                continue;
            }
            None => {}
        }
        if depth >= opts.max_depth {
            return Err(CoonsError::SplitDepthExceeded { depth });
        }

        let mut worst: Option<(usize, f64, f64)> = None;
        let mut edges_clean = true;
        for e in 0..4 {
            if padded.segments()[e].is_null() {
                continue;
            }
            match boundary_degeneracy(&patch, e) {
                Ok(Some((u, j))) => {
                    edges_clean = false;
                    if worst.is_none_or(|w| j < w.2) {
                        worst = Some((e, u, j));
                    }
                }
                Ok(None) => {}
                Err(_) => edges_clean = false,
            }
        }

        if opts.strategy == SplitStrategy::Quartic && scan_boundary {
            if let Some((e, u, _)) = worst.filter(|w| w.1 > CORNER_GUARD && w.1 < 1.0 - CORNER_GUARD) {
                let seg = &padded.segments()[e];
                if let Some(t) = seg.tangent(u) {
                    if let Some((a, b)) = split_along_ray(&padded, e as f64 + u, seg.eval(u), t.perp()) {
                        out.cuts.push(CubicSegment::line(a.segments().last().unwrap().p0, a.node(0)));
                        let tag = format!("quartic:{e}:{u:.9}");
                        for (k, part) in [a, b].iter().enumerate() {
                            let mut h = hist.clone();
                            h.push(format!("{tag}:{k}"));
                            repair(part, depth + 1, true, &h, opts, out)?;
                        }
                        continue;
                    }
                }
            }
        }

        if opts.probe_fallback && edges_clean {
            let s2 = planar_scale(&patch).powi(2);
            if probe_min(&patch).2 > 1e-9 * s2 {
                record(out, patch, padded, hist, Certificate::ProbeGrid, true);
                continue;
            }
        }

        // Internal degeneracy (or a failed boundary cut): split at a side midpoint.
        let keep_scanning = scan_boundary && worst.is_some();
        let mut sides: Vec<usize> = (0..4).filter(|&k| !padded.segments()[k].is_null()).collect();
        sides.sort_by(|&a, &b| {
            let sa = &padded.segments()[a];
            let sb = &padded.segments()[b];
            sa.is_straight()
                .cmp(&sb.is_straight())
                .then(sb.approx_length(32).total_cmp(&sa.approx_length(32)))
                .then(a.cmp(&b))
        });
        // The side midpoint comes first; the quarter points are fallbacks for
        // sides whose midpoint normal runs into a node or out of the region.
        let candidates = [0.5, 0.25, 0.75].iter().flat_map(|&t| sides.iter().map(move |&k| (k, t)));
        let mut done = false;
        for (k, u) in candidates {
            let seg = &padded.segments()[k];
            let Some(t) = seg.tangent(u) else { continue };
            if let Some((a, b)) = split_along_ray(&padded, k as f64 + u, seg.eval(u), t.perp()) {
                out.cuts.push(CubicSegment::line(a.segments().last().unwrap().p0, a.node(0)));
                for (i, part) in [a, b].iter().enumerate() {
                    let mut h = hist.clone();
                    h.push(if u == 0.5 { format!("midpoint:{k}:{i}") } else { format!("side:{k}:{u}:{i}") });
                    repair(part, depth + 1, keep_scanning, &h, opts, out)?;
                }
                done = true;
                break;
            }
        }
        if !done {
            return Err(CoonsError::SplitFailed);
        }
    }
    Ok(())
}
