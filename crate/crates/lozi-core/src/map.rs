//! The Lozi map `L(x, y) = (1 + y - a|x|, b x)`, its inverse, fixed points,
//! eigen data, the special points Z and V, and piecewise-affine mapping of
//! polylines with kink insertion.

use crate::geometry::{Point, PolyLine};
use crate::{Error, Result};

/// Iteration counts beyond this are rejected outright.
pub const MAX_ITER: i64 = 1_000_000;

/// Endpoint snap for break-line crossing parameters.
const CROSSING_SNAP: f64 = 1e-14;

/// A parameter pair in the main region a > 0, 0 < b < 1, a + b > 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    a: f64,
    b: f64,
}

impl Params {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::NonFinite);
        }
        if !(a > 0.0 && b > 0.0 && b < 1.0 && a + b > 1.0) {
            return Err(Error::BadParams {
                a,
                b,
                why: "need a > 0, 0 < b < 1, a + b > 1",
            });
        }
        debug_assert!(a * a + 4.0 * b > 0.0);
        Ok(Params { a, b })
    }

    /// Accepts the degenerate edge b = 0 for limit checks. Manifold
    /// construction and the inverse map still reject b = 0.
    pub fn new_permissive(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::NonFinite);
        }
        if b == 0.0 && a > 1.0 {
            return Ok(Params { a, b });
        }
        Params::new(a, b)
    }

    pub fn a(self) -> f64 {
        self.a
    }

    pub fn b(self) -> f64 {
        self.b
    }

    /// The discriminant a^2 + 4b of the characteristic polynomial.
    pub fn disc(self) -> f64 {
        self.a * self.a + 4.0 * self.b
    }
}

pub fn apply(p: Params, pt: Point) -> Result<Point> {
    if !pt.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(apply_unchecked(p, pt))
}

#[inline]
pub(crate) fn apply_unchecked(p: Params, pt: Point) -> Point {
    Point::new(1.0 + pt.y - p.a * pt.x.abs(), p.b * pt.x)
}

pub fn apply_inverse(p: Params, pt: Point) -> Result<Point> {
    if !pt.is_finite() {
        return Err(Error::NonFinite);
    }
    if p.b == 0.0 {
        return Err(Error::SingularMap);
    }
    Ok(apply_inverse_unchecked(p, pt))
}

#[inline]
pub(crate) fn apply_inverse_unchecked(p: Params, pt: Point) -> Point {
    let x = pt.y / p.b;
    Point::new(x, pt.x - 1.0 + p.a * x.abs())
}

/// k-fold composition of the map (k > 0) or its inverse (k < 0).
pub fn iterate(p: Params, pt: Point, k: i64) -> Result<Point> {
    if k.abs() > MAX_ITER {
        return Err(Error::IterationLimit { k });
    }
    if k < 0 && p.b == 0.0 {
        return Err(Error::SingularMap);
    }
    let mut q = pt;
    if !q.is_finite() {
        return Err(Error::NonFinite);
    }
    for i in 0..k.abs() {
        q = if k > 0 {
            apply_unchecked(p, q)
        } else {
            apply_inverse_unchecked(p, q)
        };
        if !q.is_finite() {
            return Err(Error::Diverged {
                last_finite: i * k.signum(),
            });
        }
    }
    Ok(q)
}

/// The two saddle fixed points: X in the first quadrant, Y in the third.
pub fn fixed_points(p: Params) -> (Point, Point) {
    let x = 1.0 / (1.0 + p.a - p.b);
    let y = 1.0 / (1.0 - p.a - p.b);
    (
        Point::new(x, p.b * x),
        Point::new(y, p.b * y),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedPoint {
    X,
    Y,
}

#[derive(Debug, Clone, Copy)]
pub struct EigenData {
    pub lambda_u: f64,
    pub lambda_s: f64,
    /// Eigenvectors have the form (lambda, b).
    pub eigvec_u: (f64, f64),
    pub eigvec_s: (f64, f64),
}

/// Eigenvalues of the affine piece acting at the fixed point.
///
/// At X the relevant piece has matrix [[-a, 1], [b, 0]] (x > 0), at Y the
/// piece with +a (x < 0); in both cases the eigenvalues are
/// (∓a ± sqrt(a^2 + 4b)) / 2 and the eigenvector of λ is (λ, b).
pub fn eigen_data(p: Params, at: FixedPoint) -> EigenData {
    let s = p.disc().sqrt();
    let (lu, ls) = match at {
        FixedPoint::X => ((-p.a - s) / 2.0, (-p.a + s) / 2.0),
        FixedPoint::Y => ((p.a + s) / 2.0, (p.a - s) / 2.0),
    };
    EigenData {
        lambda_u: lu,
        lambda_s: ls,
        eigvec_u: (lu, p.b),
        eigvec_s: (ls, p.b),
    }
}

/// First crossing of the right half of the unstable manifold of X with the
/// positive x-axis, in the rationalized form Z = (2 / (2 + a - sqrt(a^2+4b)), 0).
pub fn point_z(p: Params) -> Point {
    Point::new(2.0 / (2.0 + p.a - p.disc().sqrt()), 0.0)
}

/// First crossing of the lower part of the stable manifold of X with the
/// negative y-axis: V = (0, -2b / (-a + 2b + sqrt(a^2+4b))).
pub fn point_v(p: Params) -> Point {
    Point::new(0.0, -2.0 * p.b / (-p.a + 2.0 * p.b + p.disc().sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Splits every segment of `line` where it crosses the break line of the
/// selected branch (the y-axis forward, the x-axis backward), then applies the
/// pointwise map. Inserted vertices are images of break-line points and land
/// exactly on the image axis. Returns the image polyline and, for each output
/// vertex, whether it was inserted by a split (or had its source on the break
/// line, which makes the image a kink candidate as well).
pub(crate) type SplitImage = (Vec<Point>, Vec<bool>, Vec<Option<usize>>);

pub(crate) fn map_polyline_split(p: Params, verts: &[Point], dir: Direction) -> Result<SplitImage> {
    if dir == Direction::Backward && p.b == 0.0 {
        return Err(Error::SingularMap);
    }
    let coord = |pt: &Point| match dir {
        Direction::Forward => pt.x,
        Direction::Backward => pt.y,
    };
    let f = |pt: Point| match dir {
        Direction::Forward => apply_unchecked(p, pt),
        Direction::Backward => apply_inverse_unchecked(p, pt),
    };
    let mut out: Vec<Point> = Vec::with_capacity(verts.len() + 8);
    let mut split_flag: Vec<bool> = Vec::with_capacity(verts.len() + 8);
    // source index of each output vertex (None for inserted crossings)
    let mut src: Vec<Option<usize>> = Vec::with_capacity(verts.len() + 8);

    let push = |pt: Point, flag: bool, s: Option<usize>, out: &mut Vec<Point>,
                    fl: &mut Vec<bool>, sr: &mut Vec<Option<usize>>| {
        if let Some(last) = out.last() {
            if (pt.x - last.x).abs() + (pt.y - last.y).abs() <= CROSSING_SNAP {
                // merged zero-length sliver: keep the stronger flag
                let n = fl.len();
                fl[n - 1] = fl[n - 1] || flag;
                return;
            }
        }
        out.push(pt);
        fl.push(flag);
        sr.push(s);
    };

    for (i, &v) in verts.iter().enumerate() {
        if i > 0 {
            let u = verts[i - 1];
            let (c0, c1) = (coord(&u), coord(&v));
            if (c0 < 0.0 && c1 > 0.0) || (c1 < 0.0 && c0 > 0.0) {
                let t = c0 / (c0 - c1);
                if t > CROSSING_SNAP && t < 1.0 - CROSSING_SNAP {
                    let m = u + (v - u) * t;
                    push(f(m), true, None, &mut out, &mut split_flag, &mut src);
                }
            }
        }
        // a source vertex sitting on the break line maps to a kink candidate
        let on_break = coord(&v) == 0.0;
        let w = f(v);
        if !w.is_finite() {
            return Err(Error::Diverged { last_finite: 0 });
        }
        push(w, on_break, Some(i), &mut out, &mut split_flag, &mut src);
    }
    Ok((out, split_flag, src))
}

/// Image of a polyline under one application of the map or its inverse, with
/// kink vertices inserted at break-line crossings.
pub fn map_polyline(p: Params, line: &PolyLine, dir: Direction) -> Result<PolyLine> {
    let (v, _, _) = map_polyline_split(p, line.vertices(), dir)?;
    Ok(PolyLine::new(v))
}
