//! Defining conditions of the parameter-space curves C1..C6 that bound the
//! region where the saddle X has homoclinic points, numerical tracing of the
//! curves, endpoint solving, and the algebraic P + Q sqrt(a^2 + 4b) = 0
//! cross-checks.
//!
//! Each curve is the zero set of one geometric condition:
//! - C1, C3, C4, C6: an even iterate Z^{2i} of Z lands on the supporting line
//!   of the straight stable segment [V, V^1] (i = 1, 2, 2, 3);
//! - C2, C5: V lands on the supporting line of the straight initial piece of
//!   the unstable sub-arc starting at Z^{2i} (i = 1, 2).
//!
//! The offsets are augmented by the overshoot past the supporting segment so
//! that zeros only occur when the incidence is genuine.

use crate::geometry::Point;
use crate::intersect::has_homoclinic;
use crate::manifold::{unstable_arc, DEFAULT_MAX_VERTICES};
use crate::map::{self, iterate, point_v, point_z, Params};
use crate::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A boundary-defining incidence condition; zero exactly on the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryCondition {
    /// Signed offset of Z^{2i} from the supporting line of [V, V^1].
    ZIterOnStableSeg { i: i64 },
    /// Signed offset of V (toward X positive) from the supporting line of the
    /// first straight piece of the unstable arc after Z^{2i}.
    VOnUnstablePiece { i: i64 },
    /// x-coordinate of Z^{2j}.
    ZIterOnYAxis { j: i64 },
    /// Signed distance between Z^{2j} and V.
    ZIterEqualsV { j: i64 },
}

impl BoundaryCondition {
    /// Smallest number of map applications the condition depends on.
    pub fn min_depth(self) -> usize {
        match self {
            BoundaryCondition::ZIterOnStableSeg { i } => 2 * i.unsigned_abs() as usize,
            BoundaryCondition::VOnUnstablePiece { i } => 2 * i.unsigned_abs() as usize + 2,
            BoundaryCondition::ZIterOnYAxis { j } => 2 * j.unsigned_abs() as usize,
            BoundaryCondition::ZIterEqualsV { j } => 2 * j.unsigned_abs() as usize,
        }
    }
}

/// Offset of `pt` from the supporting line through `a` and `b` along unit
/// normal `n`, augmented by the overshoot of the projection past [a, b].
fn offset_overshoot(pt: Point, a: Point, b: Point, n: Point) -> f64 {
    let d = b - a;
    let val = (pt - a).dot(n);
    let t = (pt - a).dot(d) / d.dot(d);
    let o = if t < 0.0 {
        -t * d.norm()
    } else if t > 1.0 {
        (t - 1.0) * d.norm()
    } else {
        0.0
    };
    if o > 0.0 {
        let s = if val >= 0.0 { 1.0 } else { -1.0 };
        s * (val.abs() + o)
    } else {
        val
    }
}

/// Evaluate a boundary condition at the given parameters.
pub fn condition_value(p: Params, cond: BoundaryCondition) -> Result<f64> {
    match cond {
        BoundaryCondition::ZIterOnStableSeg { i } => {
            let v = point_v(p);
            let v1 = map::apply(p, v)?;
            let z2i = iterate(p, point_z(p), 2 * i)?;
            let d = v1 - v;
            let n = d.left_normal() * (1.0 / d.norm());
            Ok(offset_overshoot(z2i, v, v1, n))
        }
        BoundaryCondition::VOnUnstablePiece { i } => {
            let arc = unstable_arc(p, i.unsigned_abs() as usize + 1, DEFAULT_MAX_VERTICES)?;
            let z = point_z(p);
            let z2i = iterate(p, z, 2 * i)?;
            let z2ip2 = iterate(p, z, 2 * i + 2)?;
            let line = arc.line();
            let (si, ti, di) = line.locate(z2i);
            if di > 1e-6 {
                return Err(Error::InsufficientDepth {
                    depth: arc.depth,
                    needed: 2 * i,
                });
            }
            let (sz, tz, _) = line.locate(z2ip2);
            let forward = sz > si || (sz == si && tz > ti);
            // T: first kink vertex after Z^{2i} walking toward Z^{2i+2}
            let mut t_pt: Option<Point> = None;
            let verts = line.vertices();
            let pick = |j: usize, t_pt: &mut Option<Point>| -> bool {
                if verts[j].dist(z2i) < 1e-9 {
                    return false;
                }
                if arc.is_breakpoint(j) {
                    *t_pt = Some(verts[j]);
                    return true;
                }
                false
            };
            if forward {
                for j in (si + 1)..verts.len() {
                    if pick(j, &mut t_pt) {
                        break;
                    }
                }
            } else {
                for j in (0..=si).rev() {
                    if pick(j, &mut t_pt) {
                        break;
                    }
                }
            }
            let t_pt = t_pt.unwrap_or(z2ip2);
            let (x, _) = map::fixed_points(p);
            let d = t_pt - z2i;
            let mut n = d.left_normal() * (1.0 / d.norm());
            if (x - z2i).dot(n) < 0.0 {
                n = n * -1.0; // positive side = the side containing X
            }
            Ok(offset_overshoot(point_v(p), z2i, t_pt, n))
        }
        BoundaryCondition::ZIterOnYAxis { j } => Ok(iterate(p, point_z(p), 2 * j)?.x),
        BoundaryCondition::ZIterEqualsV { j } => {
            let z2j = iterate(p, point_z(p), 2 * j)?;
            let v = point_v(p);
            let d = z2j.dist(v);
            Ok(if z2j.y >= v.y { d } else { -d })
        }
    }
}

/// As [`condition_value`], but rejects the call when the requested truncation
/// depth cannot realize the iterates the condition depends on.
pub fn condition_value_at_depth(p: Params, cond: BoundaryCondition, depth: usize) -> Result<f64> {
    let needed = cond.min_depth();
    if depth < needed {
        return Err(Error::InsufficientDepth {
            depth,
            needed: needed as i64,
        });
    }
    condition_value(p, cond)
}

// --- root finding -------------------------------------------------------------

const INNER_TOL: f64 = 1e-12;
const OUTER_TOL: f64 = 1e-10;
const MAX_BISECT: usize = 200;

/// Bisection on a sign change of `f` over [lo, hi].
fn bisect(
    f: &mut dyn FnMut(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    tol: f64,
    what: &'static str,
) -> Result<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let mut flo = f(lo)?;
    let fhi = f(hi)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoBracket { what, lo, hi });
    }
    for _ in 0..MAX_BISECT {
        let mid = 0.5 * (lo + hi);
        if hi - lo < tol {
            return Ok(mid);
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence {
        steps: MAX_BISECT,
        r1: flo,
        r2: hi - lo,
    })
}

/// Which coordinate a solve produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coord {
    A,
    B,
}

fn params_at(coord: Coord, solved: f64, fixed: f64) -> Result<Params> {
    match coord {
        Coord::A => Params::new(solved, fixed),
        Coord::B => Params::new(fixed, solved),
    }
}

/// Solve `cond = 0` for the `coord` coordinate with the other fixed.
pub fn solve_condition(
    cond: BoundaryCondition,
    coord: Coord,
    fixed: f64,
    bracket: (f64, f64),
    tol: f64,
) -> Result<f64> {
    let mut f = |u: f64| condition_value(params_at(coord, u, fixed)?, cond);
    bisect(&mut f, bracket.0, bracket.1, tol, "boundary condition")
}

// --- curve presets and tracing --------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveId {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
}

impl CurveId {
    pub fn all() -> [CurveId; 6] {
        use CurveId::*;
        [C1, C2, C3, C4, C5, C6]
    }

    pub fn index(self) -> usize {
        self as usize + 1
    }

    /// The geometric condition whose zero set is this curve.
    pub fn condition(self) -> BoundaryCondition {
        use BoundaryCondition::*;
        match self {
            CurveId::C1 => ZIterOnStableSeg { i: 1 },
            CurveId::C2 => VOnUnstablePiece { i: 1 },
            CurveId::C3 => ZIterOnStableSeg { i: 2 },
            CurveId::C4 => ZIterOnStableSeg { i: 2 },
            CurveId::C5 => VOnUnstablePiece { i: 2 },
            CurveId::C6 => ZIterOnStableSeg { i: 3 },
        }
    }

    /// Sweep plan: (swept coordinate, from, to, solved coordinate, bracket).
    /// C4 and C6 are graphs over a; the others over b.
    pub fn sweep(self) -> (Coord, f64, f64, Coord, (f64, f64)) {
        match self {
            CurveId::C1 => (Coord::B, 0.010, 0.5491, Coord::A, (1.30, 1.60)),
            CurveId::C2 => (Coord::B, 0.5492, 0.6132, Coord::A, (1.48, 1.56)),
            CurveId::C3 => (Coord::B, 0.6140, 0.9110, Coord::A, (1.56, 1.66)),
            CurveId::C4 => (Coord::A, 1.4780, 1.5006, Coord::B, (0.88, 0.93)),
            CurveId::C5 => (Coord::B, 0.9067, 0.9606, Coord::A, (1.46, 1.49)),
            CurveId::C6 => (Coord::A, 1.2378, 1.4772, Coord::B, (0.89, 0.95)),
        }
    }
}

impl std::fmt::Display for CurveId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "C{}", self.index())
    }
}

impl std::str::FromStr for CurveId {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_uppercase().as_str() {
            "C1" | "1" => Ok(CurveId::C1),
            "C2" | "2" => Ok(CurveId::C2),
            "C3" | "3" => Ok(CurveId::C3),
            "C4" | "4" => Ok(CurveId::C4),
            "C5" | "5" => Ok(CurveId::C5),
            "C6" | "6" => Ok(CurveId::C6),
            other => Err(format!("unknown curve {other:?} (expected C1..C6)")),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct TracePoint {
    pub a: f64,
    pub b: f64,
    /// Normalized residual of the matching algebraic form from the table of
    /// P, Q pairs; NaN when not applicable.
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct Trace {
    pub curve: CurveId,
    pub points: Vec<TracePoint>,
    /// Set when continuation lost the root before reaching the sweep end.
    pub end_of_branch: bool,
}

/// Trace a boundary curve by continuation: sweep one coordinate, solve the
/// condition for the other, re-centering the bracket on the previous solution.
pub fn trace_curve(curve: CurveId, steps: usize) -> Result<Trace> {
    let (_, from, to, _, _) = curve.sweep();
    trace_curve_range(curve, from, to, steps)
}

/// As [`trace_curve`], but over a custom range of the swept coordinate. The
/// first solve still starts from the preset bracket, so the range should
/// overlap the curve's known extent.
pub fn trace_curve_range(curve: CurveId, from: f64, to: f64, steps: usize) -> Result<Trace> {
    assert!(steps >= 1);
    let cond = curve.condition();
    let (_sweep, _, _, solve, bracket0) = curve.sweep();
    let mut points = Vec::with_capacity(steps + 1);
    let mut end_of_branch = false;
    let mut prev: Option<f64> = None;
    for k in 0..=steps {
        let t = from + (to - from) * (k as f64) / (steps as f64);
        let bracket = match prev {
            None => bracket0,
            Some(w) => {
                // expanding re-centered bracket
                let mut half = 0.005_f64;
                let mut found = None;
                for _ in 0..5 {
                    let lo = (w - half).max(bracket_floor(solve, t));
                    let hi = (w + half).min(bracket_ceil(solve, t));
                    let ok = |u: f64| {
                        params_at(solve, u, t)
                            .and_then(|p| condition_value(p, cond))
                            .ok()
                    };
                    if let (Some(flo), Some(fhi)) = (ok(lo), ok(hi)) {
                        if flo.signum() != fhi.signum() {
                            found = Some((lo, hi));
                            break;
                        }
                    }
                    half *= 2.0;
                }
                match found {
                    Some(b) => b,
                    None => {
                        end_of_branch = true;
                        break;
                    }
                }
            }
        };
        let w = match solve_condition(cond, solve, t, bracket, INNER_TOL) {
            Ok(w) => w,
            Err(_) => {
                end_of_branch = true;
                break;
            }
        };
        prev = Some(w);
        let (a, b) = match solve {
            Coord::A => (w, t),
            Coord::B => (t, w),
        };
        points.push(TracePoint {
            a,
            b,
            residual: table1_residual(curve.index(), a, b),
        });
    }
    Ok(Trace {
        curve,
        points,
        end_of_branch,
    })
}

fn bracket_floor(solve: Coord, fixed: f64) -> f64 {
    match solve {
        Coord::A => (1.0 - fixed).max(0.0) + 1e-6,
        Coord::B => (1.0 - fixed).max(0.0) + 1e-6,
    }
}

fn bracket_ceil(solve: Coord, _fixed: f64) -> f64 {
    match solve {
        Coord::A => 4.0,
        Coord::B => 1.0 - 1e-6,
    }
}

// --- endpoints ------------------------------------------------------------------

/// Configuration of a two-condition endpoint solve: the inner condition is
/// solved for `inner_solves` at each value of the outer coordinate; the outer
/// bisection drives the second condition to zero along that solution branch.
#[derive(Debug, Clone, Copy)]
pub struct EndpointConfig {
    pub inner: BoundaryCondition,
    pub outer: BoundaryCondition,
    pub inner_solves: Coord,
    pub a_range: (f64, f64),
    pub b_range: (f64, f64),
}

/// Frozen solve configurations for the corners 1..6 where consecutive curves
/// meet. The inner/outer roles are chosen so that each one-dimensional solve
/// is single-valued over its box (several curves fold over one coordinate).
pub fn endpoint_config(n: usize) -> EndpointConfig {
    use BoundaryCondition::*;
    use Coord::*;
    match n {
        1 => EndpointConfig {
            inner: ZIterOnStableSeg { i: 1 },
            outer: VOnUnstablePiece { i: 1 },
            inner_solves: A,
            a_range: (1.50, 1.54),
            b_range: (0.50, 0.60),
        },
        2 => EndpointConfig {
            inner: VOnUnstablePiece { i: 1 },
            outer: ZIterOnStableSeg { i: 2 },
            inner_solves: B,
            a_range: (1.60, 1.64),
            b_range: (0.58, 0.65),
        },
        3 => EndpointConfig {
            inner: ZIterOnYAxis { j: 1 },
            outer: ZIterOnStableSeg { i: 2 },
            inner_solves: A,
            a_range: (1.48, 1.52),
            b_range: (0.88, 0.93),
        },
        4 => EndpointConfig {
            inner: ZIterOnStableSeg { i: 2 },
            outer: ZIterOnYAxis { j: 2 },
            inner_solves: B,
            a_range: (1.46, 1.50),
            b_range: (0.88, 0.93),
        },
        5 => EndpointConfig {
            inner: VOnUnstablePiece { i: 2 },
            outer: ZIterOnStableSeg { i: 3 },
            inner_solves: A,
            a_range: (1.46, 1.49),
            b_range: (0.93, 0.98),
        },
        6 => EndpointConfig {
            inner: ZIterOnStableSeg { i: 3 },
            outer: ZIterOnYAxis { j: 3 },
            inner_solves: B,
            a_range: (1.20, 1.30),
            b_range: (0.89, 0.95),
        },
        _ => panic!("endpoint index must be 1..=6"),
    }
}

/// Solve the meeting point of two boundary conditions.
pub fn solve_endpoint_config(cfg: EndpointConfig) -> Result<(f64, f64)> {
    let (inner_range, outer_range) = match cfg.inner_solves {
        Coord::A => (cfg.a_range, cfg.b_range),
        Coord::B => (cfg.b_range, cfg.a_range),
    };
    let inner_for = |u: f64| -> Result<f64> {
        let mut f = |w: f64| condition_value(params_at(cfg.inner_solves, w, u)?, cfg.inner);
        bisect(&mut f, inner_range.0, inner_range.1, INNER_TOL, "inner condition")
    };
    let mut g = |u: f64| -> Result<f64> {
        let w = inner_for(u)?;
        condition_value(params_at(cfg.inner_solves, w, u)?, cfg.outer)
    };
    let u = bisect(&mut g, outer_range.0, outer_range.1, OUTER_TOL, "outer condition")?;
    let w = inner_for(u)?;
    Ok(match cfg.inner_solves {
        Coord::A => (w, u),
        Coord::B => (u, w),
    })
}

/// The corner point (a_n, b_n) where curves C_n and C_{n+1} meet, n = 1..6.
pub fn solve_endpoint(n: usize) -> Result<(f64, f64)> {
    solve_endpoint_config(endpoint_config(n))
}

/// Published reference corner points (n, a_n, b_n). Rows 1..=6 are
/// reproducible by [`solve_endpoint`]; the rest involve deeper conditions and
/// ship for comparison only. Mirrored in fixtures/table2_endpoints.csv.
pub const TABLE2_REF: [(usize, f64, f64); 11] = [
    (1, 1.51950144, 0.549133899),
    (2, 1.61870652, 0.613234325),
    (3, 1.50065366, 0.911203728),
    (4, 1.4778227, 0.906571953),
    (5, 1.47728163, 0.960699507),
    (6, 1.23772202, 0.918152634),
    (7, 1.23744761, 0.939287819),
    (8, 1.09974148, 0.975240539),
    (9, 1.07356315, 0.967833586),
    (10, 1.06317799, 0.982377305),
    (11, 0.939255378, 0.968217486),
];

// --- algebraic forms --------------------------------------------------------------

/// Integer coefficient grids of the polynomial pairs (P_n, Q_n) with
/// P_n(a, b) + Q_n(a, b) sqrt(a^2 + 4b) = 0 on curve C_n. Entry 2(n-1) is P_n,
/// entry 2n-1 is Q_n; `grid[k][m]` is the coefficient of `b^k a^m`.
///
/// The published P_2 had `8a^4` where the structure of the derivation gives
/// `8a^3` in the b^4 coefficient, and the P_4/Q_4 and P_6/Q_6 rows did not
/// vanish on their curves as printed; those three entries are replaced by
/// pairs re-derived symbolically from the defining incidences (resultant of
/// the branch conditions), verified to vanish along the traced curves.
pub const TABLE1: [&[&[i64]]; 12] = [
    // C1 P
    &[&[0, -4, 0, 1]],
    // C1 Q
    &[&[0, 0, 1], &[-2]],
    // C2 P
    &[
        &[0, 0, 0, 0, 0, 0, 2, 0, -2],
        &[0, 0, 0, 0, -10, -8, 2, 4],
        &[0, 0, 11, 16, 15],
        &[-4, -4, -15, -8, 0, -4],
        &[4, 0, 0, -8],
        &[0, 4],
    ],
    // C2 Q
    &[
        &[0, 0, 0, 0, 0, 2, 0, -2],
        &[0, 0, 0, -6, 0, 6, 4],
        &[0, 3, 0, -1, -8],
        &[0, -1, 4, 0, -4],
    ],
    // C3 P
    &[
        &[0, 0, -2, -4, -4],
        &[0, -4, -6, 0, -1],
        &[0, 0, 3],
        &[4],
    ],
    // C3 Q
    &[&[0, 2, 4, 4], &[0, 2, 0, -1], &[0, -3]],
    // C4 P
    &[
        &[0, 0, -2, 0, 2, 0, -1],
        &[0, 4, -6, -6, 1, 1],
        &[0, 4, 7, -2],
        &[-4],
    ],
    // C4 Q
    &[
        &[0, -2, 0, 2, 0, -1],
        &[0, -2, 2, 3, 1],
        &[0, -1, -4],
        &[2],
    ],
    // C5 P
    &[
        &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1],
        &[0, 0, 0, 0, 0, 0, 0, 0, 0, 10, 4],
        &[0, 0, 0, 0, 0, 0, 0, -36, -28],
        &[0, 0, 0, 0, 0, 56, 64, 0, -4],
        &[0, 0, 0, -35, -52, 0, 20],
        &[0, 6, 11, 0, -27, 0, 3],
        &[0, 0, 9, 0, -11],
        &[0, 0, 7],
    ],
    // C5 Q
    &[
        &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1],
        &[0, 0, 0, 0, 0, 0, 0, 0, 8],
        &[0, 0, 0, 0, 0, 0, -22],
        &[0, 0, 0, 0, 24],
        &[0, 0, -9],
        &[1, 1, 0, -1, 0, 1],
        &[0, 1, 0, -3],
        &[0, 1],
    ],
    // C6 P
    &[
        &[0, 0, -2, -2, -2, 0, 2, 0, -1],
        &[0, 8, 8, 6, -2, -6, -1, 1],
        &[0, 4, -2, -4, 6],
        &[0, 4, 7, -1],
        &[-4, -4],
    ],
    // C6 Q
    &[
        &[0, -2, -2, -2, 0, 2, 0, -1],
        &[0, -4, -2, 2, 2, 1, 1],
        &[0, -2, 0, 2, -2],
        &[0, 1, -3],
        &[2],
    ],
];

/// Horner evaluation of a coefficient grid, outer in b, inner in a.
fn eval_grid(rows: &[&[i64]], a: f64, b: f64) -> f64 {
    let mut tot = 0.0;
    for row in rows.iter().rev() {
        let mut c = 0.0;
        for &m in row.iter().rev() {
            c = c * a + m as f64;
        }
        tot = tot * b + c;
    }
    tot
}

/// (P_n(a, b), Q_n(a, b)) for curve index n in 1..=6.
pub fn table1_pq(n: usize, a: f64, b: f64) -> (f64, f64) {
    assert!((1..=6).contains(&n), "curve index must be 1..=6");
    (
        eval_grid(TABLE1[2 * (n - 1)], a, b),
        eval_grid(TABLE1[2 * n - 1], a, b),
    )
}

/// Normalized residual (P + Q sqrt(a^2 + 4b)) / (1 + |P| + |Q|) of the
/// algebraic form of curve n.
pub fn table1_residual(n: usize, a: f64, b: f64) -> f64 {
    let (p, q) = table1_pq(n, a, b);
    (p + q * (a * a + 4.0 * b).sqrt()) / (1.0 + p.abs() + q.abs())
}

/// Reduce an integer polynomial in a modulo a^2 - 2 to (constant, linear).
fn reduce_mod_a2_minus_2(coeffs: &[i64]) -> (i64, i64) {
    let mut c = coeffs.to_vec();
    for m in (2..c.len()).rev() {
        let top = c[m];
        c[m] = 0;
        c[m - 2] += 2 * top; // a^m = 2 a^{m-2}
    }
    (
        c.first().copied().unwrap_or(0),
        c.get(1).copied().unwrap_or(0),
    )
}

/// At b = 0 (and a > 0) the algebraic form of C1 degenerates to
/// P_1(a, 0) + a Q_1(a, 0) = 2a(a^2 - 2): identically zero at a = sqrt(2) as
/// an element of Z[a]/(a^2 - 2). Exact integer check of that reduction.
pub fn curve1_limit_is_sqrt2_exactly() -> bool {
    let pa: &[i64] = TABLE1[0][0]; // P_1 at b^0
    let qa: &[i64] = TABLE1[1][0]; // Q_1 at b^0
    // combined = P(a, 0) + a * Q(a, 0)
    let mut combined = vec![0i64; pa.len().max(qa.len() + 1)];
    for (m, &c) in pa.iter().enumerate() {
        combined[m] += c;
    }
    for (m, &c) in qa.iter().enumerate() {
        combined[m + 1] += c;
    }
    reduce_mod_a2_minus_2(&combined) == (0, 0)
}

// --- Misiurewicz's transversality boundary ----------------------------------------

/// Quartic form of the classical transversality condition:
/// 2a^4 - 3a^2 b^2 - 4a^2 + 4b^3 (zero on the boundary curve below which
/// transversality of the first homoclinic intersection fails).
pub fn misiurewicz_quartic(a: f64, b: f64) -> f64 {
    2.0 * a.powi(4) - 3.0 * a * a * b * b - 4.0 * a * a + 4.0 * b * b * b
}

/// Radical form of the same condition: (2a)^2 - (3b^2 + 4 + sqrt((3b^2+4)^2 - 32 b^3)).
pub fn misiurewicz_radical(a: f64, b: f64) -> Result<f64> {
    let u = 3.0 * b * b + 4.0;
    let radicand = u * u - 32.0 * b * b * b;
    if radicand < 0.0 {
        return Err(Error::NegativeRadicand { radicand });
    }
    Ok(4.0 * a * a - (u + radicand.sqrt()))
}

/// The quartic and the C1 pair satisfy 4 * quartic = -(P_1^2 - Q_1^2 (a^2+4b)).
pub fn misiurewicz_identity_residual(a: f64, b: f64) -> f64 {
    let (p, q) = table1_pq(1, a, b);
    let lhs = 4.0 * misiurewicz_quartic(a, b);
    let rhs = -(p * p - q * q * (a * a + 4.0 * b));
    lhs - rhs
}

// --- region scan -------------------------------------------------------------------

/// Presence grid of homoclinic points over a parameter rectangle.
/// `cells[jb * na + ia]` corresponds to (a[ia], b[jb]); `None` marks points
/// where the computation failed (invalid parameters, divergence).
#[derive(Debug, Clone)]
pub struct ScanGrid {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub cells: Vec<Option<bool>>,
}

fn scan_point(a: f64, b: f64, depth: usize, tol: f64) -> Option<bool> {
    let p = Params::new(a, b).ok()?;
    has_homoclinic(p, depth, tol).ok()
}

fn grid_axes(
    a_range: (f64, f64),
    b_range: (f64, f64),
    na: usize,
    nb: usize,
) -> (Vec<f64>, Vec<f64>) {
    let lin = |(lo, hi): (f64, f64), n: usize| -> Vec<f64> {
        (0..n)
            .map(|i| lo + (hi - lo) * (i as f64) / ((n - 1).max(1) as f64))
            .collect()
    };
    (lin(a_range, na), lin(b_range, nb))
}

/// Scan a parameter rectangle for homoclinic points (data-parallel when the
/// `parallel` feature is on).
pub fn scan_region(
    a_range: (f64, f64),
    b_range: (f64, f64),
    na: usize,
    nb: usize,
    depth: usize,
    tol: f64,
) -> ScanGrid {
    assert!(na >= 2 && nb >= 2);
    let (a, b) = grid_axes(a_range, b_range, na, nb);
    #[cfg(feature = "parallel")]
    let cells = (0..na * nb)
        .into_par_iter()
        .map(|k| scan_point(a[k % na], b[k / na], depth, tol))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let cells = (0..na * nb)
        .map(|k| scan_point(a[k % na], b[k / na], depth, tol))
        .collect();
    ScanGrid { a, b, cells }
}

/// Single-threaded scan regardless of the `parallel` feature.
pub fn scan_region_seq(
    a_range: (f64, f64),
    b_range: (f64, f64),
    na: usize,
    nb: usize,
    depth: usize,
    tol: f64,
) -> ScanGrid {
    assert!(na >= 2 && nb >= 2);
    let (a, b) = grid_axes(a_range, b_range, na, nb);
    let cells = (0..na * nb)
        .map(|k| scan_point(a[k % na], b[k / na], depth, tol))
        .collect();
    ScanGrid { a, b, cells }
}
