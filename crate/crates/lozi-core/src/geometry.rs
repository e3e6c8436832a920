//! Planar primitives and the orientation predicate used by the intersection
//! kernel. The predicate is exact: a fast floating-point determinant with a
//! Shewchuk-style error bound, falling back to expansion arithmetic when the
//! fast result is within rounding error of zero.

use std::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Counterclockwise rotation by 90 degrees.
    pub fn left_normal(self) -> Point {
        Point::new(-self.y, self.x)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub p: Point,
    pub q: Point,
}

impl Segment {
    pub fn new(p: Point, q: Point) -> Self {
        debug_assert!(p != q, "degenerate segment");
        Segment { p, q }
    }

    pub fn len(&self) -> f64 {
        self.p.dist(self.q)
    }

    pub fn slope(&self) -> f64 {
        (self.q.y - self.p.y) / (self.q.x - self.p.x)
    }

    pub fn at(&self, t: f64) -> Point {
        self.p + (self.q - self.p) * t
    }

    /// Closest-point parameter (clamped to [0, 1]) and distance from `r`.
    pub fn closest(&self, r: Point) -> (f64, f64) {
        let d = self.q - self.p;
        let t = ((r - self.p).dot(d) / d.dot(d)).clamp(0.0, 1.0);
        (t, r.dist(self.at(t)))
    }
}

/// An ordered polygonal line with at least two vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyLine {
    vertices: Vec<Point>,
}

impl PolyLine {
    /// Panics if fewer than two vertices or consecutive duplicates are given.
    pub fn new(vertices: Vec<Point>) -> Self {
        assert!(vertices.len() >= 2, "polyline needs at least two vertices");
        for w in vertices.windows(2) {
            assert!(w[0] != w[1], "consecutive duplicate vertices");
        }
        PolyLine { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn segment(&self, i: usize) -> Segment {
        Segment::new(self.vertices[i], self.vertices[i + 1])
    }

    pub fn num_segments(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.vertices.windows(2).map(|w| Segment::new(w[0], w[1]))
    }

    /// Diameter of the axis-aligned bounding box.
    pub fn diameter(&self) -> f64 {
        let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for v in &self.vertices {
            xmin = xmin.min(v.x);
            xmax = xmax.max(v.x);
            ymin = ymin.min(v.y);
            ymax = ymax.max(v.y);
        }
        (xmax - xmin).hypot(ymax - ymin)
    }

    /// Nearest segment to `r`: (segment index, parameter, distance).
    pub fn locate(&self, r: Point) -> (usize, f64, f64) {
        let mut best = (0, 0.0, f64::MAX);
        for i in 0..self.num_segments() {
            let (t, d) = self.segment(i).closest(r);
            if d < best.2 {
                best = (i, t, d);
            }
        }
        best
    }
}

// --- exact orientation predicate ---------------------------------------------

const EPS: f64 = f64::EPSILON / 2.0;
const CCW_ERRBOUND: f64 = (3.0 + 16.0 * EPS) * EPS;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bv = s - a;
    let av = s - bv;
    (s, (a - av) + (b - bv))
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let c = 134_217_729.0 * a; // 2^27 + 1
    let hi = c - (c - a);
    (hi, a - hi)
}

#[inline]
fn two_product(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ahi, alo) = split(a);
    let (bhi, blo) = split(b);
    let err = p - ahi * bhi - alo * bhi - ahi * blo;
    (p, alo * blo - err)
}

/// Grow a nonoverlapping expansion by one term.
fn grow(e: &mut Vec<f64>, b: f64) {
    let mut q = b;
    let mut out = Vec::with_capacity(e.len() + 1);
    for &t in e.iter() {
        let (s, err) = two_sum(q, t);
        if err != 0.0 {
            out.push(err);
        }
        q = s;
    }
    out.push(q);
    *e = out;
}

/// Sign of the orientation determinant of (a, b, c): positive when c lies to
/// the left of the directed line a -> b, negative to the right, zero when
/// collinear. Exact.
pub fn orient2d(a: Point, b: Point, c: Point) -> f64 {
    let detleft = (a.x - c.x) * (b.y - c.y);
    let detright = (a.y - c.y) * (b.x - c.x);
    let det = detleft - detright;

    let detsum = if detleft > 0.0 && detright > 0.0 {
        detleft + detright
    } else if detleft < 0.0 && detright < 0.0 {
        -detleft - detright
    } else {
        return det; // opposite signs (or an exact zero factor): det is exact enough
    };
    if det.abs() >= CCW_ERRBOUND * detsum {
        return det;
    }
    orient2d_exact(a, b, c)
}

/// Full-precision fallback: the six products of the 3x3 determinant summed in
/// expansion arithmetic; the leading component carries the exact sign.
fn orient2d_exact(a: Point, b: Point, c: Point) -> f64 {
    let terms = [
        two_product(a.x, b.y),
        two_product(-a.x, c.y),
        two_product(-a.y, b.x),
        two_product(a.y, c.x),
        two_product(b.x, c.y),
        two_product(-b.y, c.x),
    ];
    let mut e: Vec<f64> = vec![0.0];
    for (p, t) in terms {
        grow(&mut e, t);
        grow(&mut e, p);
    }
    *e.last().unwrap()
}

/// Proper or touching intersection of two segments. Returns the intersection
/// point with its parameters when the segments cross or touch (endpoints
/// included); `None` when disjoint or collinear-overlapping (the caller's
/// proximity pass handles near-parallel contact).
pub fn seg_intersection(s: Segment, t: Segment) -> Option<(Point, f64, f64)> {
    let o1 = orient2d(s.p, s.q, t.p);
    let o2 = orient2d(s.p, s.q, t.q);
    let o3 = orient2d(t.p, t.q, s.p);
    let o4 = orient2d(t.p, t.q, s.q);
    let opposite = |x: f64, y: f64| (x > 0.0 && y < 0.0) || (x < 0.0 && y > 0.0);
    if !(opposite(o1, o2) || o1 == 0.0 || o2 == 0.0) {
        return None;
    }
    if !(opposite(o3, o4) || o3 == 0.0 || o4 == 0.0) {
        return None;
    }
    if o1 == 0.0 && o2 == 0.0 {
        return None; // collinear
    }
    let d1 = s.q - s.p;
    let d2 = t.q - t.p;
    let den = d1.cross(d2);
    if den == 0.0 {
        return None;
    }
    // orientations certify the crossing; rounding in u, v is clamped away
    let u = ((t.p - s.p).cross(d2) / den).clamp(0.0, 1.0);
    let v = ((t.p - s.p).cross(d1) / den).clamp(0.0, 1.0);
    Some((s.at(u), u, v))
}

/// Minimum distance between two segments, with the closest pair of parameters.
pub fn seg_seg_distance(s: Segment, t: Segment) -> (f64, f64, f64) {
    if let Some((_, u, v)) = seg_intersection(s, t) {
        return (0.0, u, v);
    }
    let mut best = (f64::MAX, 0.0, 0.0);
    for (r, v) in [(t.p, 0.0), (t.q, 1.0)] {
        let (u, d) = s.closest(r);
        if d < best.0 {
            best = (d, u, v);
        }
    }
    for (r, u) in [(s.p, 0.0), (s.q, 1.0)] {
        let (v, d) = t.closest(r);
        if d < best.0 {
            best = (d, u, v);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orient_sign() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(1.0, 0.0);
        assert!(orient2d(a, b, Point::new(0.5, 1.0)) > 0.0);
        assert!(orient2d(a, b, Point::new(0.5, -1.0)) < 0.0);
        assert_eq!(orient2d(a, b, Point::new(2.0, 0.0)), 0.0);
    }

    #[test]
    fn orient_exact_on_tiny_offsets() {
        // collinear up to the last bit: the naive determinant misjudges these
        let a = Point::new(0.1, 0.1);
        let b = Point::new(0.3, 0.3);
        let c = Point::new(0.2, 0.2);
        assert_eq!(orient2d(a, b, c), 0.0);
        let c_up = Point::new(0.2, 0.2 + f64::EPSILON * 0.2);
        assert!(orient2d(a, b, c_up) > 0.0);
    }

    #[test]
    fn crossing_segments() {
        let s = Segment::new(Point::new(-1.0, 0.0), Point::new(1.0, 0.0));
        let t = Segment::new(Point::new(0.25, -1.0), Point::new(0.25, 1.0));
        let (p, u, v) = seg_intersection(s, t).unwrap();
        assert!((p.x - 0.25).abs() < 1e-15 && p.y.abs() < 1e-15);
        assert!((u - 0.625).abs() < 1e-15 && (v - 0.5).abs() < 1e-15);
    }

    #[test]
    fn disjoint_segments() {
        let s = Segment::new(Point::new(-1.0, 0.0), Point::new(1.0, 0.0));
        let t = Segment::new(Point::new(0.0, 0.5), Point::new(1.0, 2.0));
        assert!(seg_intersection(s, t).is_none());
        let (d, _, _) = seg_seg_distance(s, t);
        assert!((d - 0.5).abs() < 1e-15);
    }
}
