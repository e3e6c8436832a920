//! Finite arcs of the stable and unstable manifolds of X as labeled polygonal
//! lines, the slope recurrence along the stable manifold, the zigzag part, and
//! the gamma/delta decomposition of the unstable manifold.

use crate::geometry::{Point, PolyLine, Segment};
use crate::map::{
    self, apply_unchecked, iterate, map_polyline_split, point_v, point_z, Direction, Params,
};
use crate::{Error, Result};

/// Default number of Z-iterate pairs for the unstable arc.
pub const DEFAULT_PAIRS: usize = 8;
/// Default vertex budget.
pub const DEFAULT_MAX_VERTICES: usize = 1 << 20;
/// Snap band for quadrant membership: |coordinate| below this counts as on-axis.
pub const AXIS_SNAP: f64 = 1e-12;

const ANCHOR_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Stable,
    Unstable,
}

/// Anchor labels: the fixed point X, iterates of Z, iterates of V.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    X,
    Z(i64),
    V(i64),
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::X => write!(f, "X"),
            Label::Z(k) => write!(f, "Z^{k}"),
            Label::V(k) => write!(f, "V^{k}"),
        }
    }
}

/// A labeled polygonal arc of a manifold.
///
/// `breakpoints[i] = Some(m)` marks vertex `i` as a kink (a post-critical
/// point on the unstable arc, a V-point on the stable arc); `m` is the number
/// of pullback steps (unstable) or forward steps (stable) that carry the
/// vertex onto the relevant break line.
#[derive(Debug, Clone)]
pub struct ManifoldArc {
    pub kind: Kind,
    line: PolyLine,
    anchors: Vec<(usize, Label)>,
    breakpoints: Vec<Option<u32>>,
    /// Number of map applications used.
    pub depth: usize,
}

impl ManifoldArc {
    pub fn line(&self) -> &PolyLine {
        &self.line
    }

    /// (vertex index, label) pairs, ascending by index.
    pub fn anchors(&self) -> &[(usize, Label)] {
        &self.anchors
    }

    pub fn anchor_index(&self, label: Label) -> Option<usize> {
        self.anchors.iter().find(|(_, l)| *l == label).map(|(i, _)| *i)
    }

    pub fn anchor_point(&self, label: Label) -> Option<Point> {
        self.anchor_index(label).map(|i| self.line.vertices()[i])
    }

    pub fn is_breakpoint(&self, i: usize) -> bool {
        self.breakpoints[i].is_some()
    }

    /// Steps to the break line for breakpoint vertex `i`.
    pub fn breakpoint_steps(&self, i: usize) -> Option<u32> {
        self.breakpoints[i]
    }

    pub fn breakpoint_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.breakpoints
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.map(|_| i))
    }
}

/// Merge interior vertices collinear with both neighbours, unless they carry
/// a breakpoint flag or satisfy `protect`.
fn prune_collinear(
    verts: Vec<Point>,
    flags: Vec<Option<u32>>,
    protect: impl Fn(Point) -> bool,
) -> (Vec<Point>, Vec<Option<u32>>) {
    let mut out_v: Vec<Point> = Vec::with_capacity(verts.len());
    let mut out_f: Vec<Option<u32>> = Vec::with_capacity(verts.len());
    for (v, f) in verts.iter().zip(flags.iter()) {
        out_v.push(*v);
        out_f.push(*f);
        let n = out_v.len();
        if n < 3 || out_f[n - 2].is_some() || protect(out_v[n - 2]) {
            continue;
        }
        let d1 = out_v[n - 2] - out_v[n - 3];
        let d2 = out_v[n - 1] - out_v[n - 2];
        if d1.cross(d2).abs() < 1e-12 * d1.norm() * d2.norm() {
            out_v.remove(n - 2);
            out_f.remove(n - 2);
        }
    }
    (out_v, out_f)
}

/// The arc [Z^{2 pairs - 1}, Z^{2 pairs}] of the unstable manifold, containing
/// [Z^{-1}, Z^{2 pairs}]: the straight seed Z^{-1} -> X -> Z on the unstable
/// eigenline pushed forward 2*pairs times with kink insertion.
pub fn unstable_arc(p: Params, pairs: usize, max_vertices: usize) -> Result<ManifoldArc> {
    if p.b() == 0.0 {
        return Err(Error::SingularMap);
    }
    assert!(pairs >= 1, "need at least one pair");
    let z = point_z(p);
    let zm1 = map::apply_inverse(p, z)?;
    let (x, _) = map::fixed_points(p);
    let mut verts = vec![zm1, x, z];
    // Z is the image of Z^{-1} on the y-axis: one pullback step to the axis
    let mut flags: Vec<Option<u32>> = vec![None, None, Some(1)];
    let depth = 2 * pairs;
    for step in 1..=depth {
        let (nv, inserted, src) = map_polyline_split(p, &verts, Direction::Forward)?;
        let mut nf: Vec<Option<u32>> = Vec::with_capacity(nv.len());
        for (i, s) in src.iter().enumerate() {
            let inherited = s.and_then(|j| flags[j]).map(|m| m + 1);
            nf.push(if inserted[i] { Some(1) } else { inherited });
        }
        verts = nv;
        flags = nf;
        if verts.len() > max_vertices {
            return Err(Error::VertexBudget {
                max: max_vertices,
                depth: step,
            });
        }
    }
    let (verts, flags) = prune_collinear(verts, flags, |q| q.dist(x) < ANCHOR_TOL);
    let line = PolyLine::new(verts);
    // anchors: X and the iterates of Z that survive as vertices
    let mut anchors: Vec<(usize, Label)> = Vec::new();
    let add = |pt: Point, label: Label, anchors: &mut Vec<(usize, Label)>| {
        let (i, t, d) = line.locate(pt);
        if d < ANCHOR_TOL {
            let idx = if t < 0.5 { i } else { i + 1 };
            if line.vertices()[idx].dist(pt) < ANCHOR_TOL
                && !anchors.iter().any(|(j, _)| *j == idx)
            {
                anchors.push((idx, label));
            }
        }
    };
    add(x, Label::X, &mut anchors);
    for k in -1..=(depth as i64) {
        if let Ok(zk) = iterate(p, z, k) {
            add(zk, Label::Z(k), &mut anchors);
        }
    }
    anchors.sort_by_key(|(i, _)| *i);
    Ok(ManifoldArc {
        kind: Kind::Unstable,
        line,
        anchors,
        breakpoints: flags,
        depth,
    })
}

/// The arc [X, V^{-steps}] of the stable manifold: the straight seed
/// X -> V^1 -> V on the stable eigenline, extended by successive backward
/// images of the last piece [V^{1-k}, V^{-k}].
pub fn stable_arc(p: Params, steps: usize, max_vertices: usize) -> Result<ManifoldArc> {
    if p.b() == 0.0 {
        return Err(Error::SingularMap);
    }
    let v = point_v(p);
    let v1 = apply_unchecked(p, v); // (1 + V_y, 0), on the x-axis
    let (x, _) = map::fixed_points(p);
    let mut verts = vec![x, v1, v];
    let mut flags: Vec<Option<u32>> = vec![None, None, Some(1)];
    let mut anchors: Vec<(usize, Label)> = vec![(0, Label::X), (1, Label::V(1)), (2, Label::V(0))];
    // current tail piece [V^{1-k}, V^{-k}] with its own flags
    let mut tail: Vec<Point> = vec![v1, v];
    let mut tail_flags: Vec<Option<u32>> = vec![None, Some(1)];
    for k in 1..=steps {
        let (nv, inserted, src) = map_polyline_split(p, &tail, Direction::Backward)?;
        let mut nf: Vec<Option<u32>> = Vec::with_capacity(nv.len());
        for (i, s) in src.iter().enumerate() {
            let inherited = s.and_then(|j| tail_flags[j]).map(|m| m + 1);
            nf.push(if inserted[i] { Some(1) } else { inherited });
        }
        // append, skipping the junction vertex V^{1-k} already present
        let offset = verts.len() - 1;
        let junction = verts[offset];
        debug_assert!(junction.dist(nv[0]) < 1e-6 * (1.0 + junction.norm()));
        flags[offset] = flags[offset].or(nf[0]);
        verts.extend_from_slice(&nv[1..]);
        flags.extend_from_slice(&nf[1..]);
        anchors.push((verts.len() - 1, Label::V(-(k as i64))));
        tail = nv;
        tail_flags = nf;
        if verts.len() > max_vertices {
            return Err(Error::VertexBudget {
                max: max_vertices,
                depth: k,
            });
        }
    }
    let line = PolyLine::new(verts);
    Ok(ManifoldArc {
        kind: Kind::Stable,
        line,
        anchors,
        breakpoints: flags,
        depth: steps,
    })
}

/// The slope recurrence s_{n+1} = b / s_n - a along the stable manifold:
/// s_0 = (a + sqrt(a^2+4b)) / 2 is the slope of the stable eigenline, and s_n
/// is the slope of the n-th zigzag leg [V^{-n+1}, V^{-n}].
#[derive(Debug, Clone)]
pub struct SlopeSequence {
    pub s0: f64,
    pub m1: f64,
    pub m2: f64,
    pub mu: f64,
    pub j0: f64,
    pub values: Vec<f64>,
    /// Set when the recurrence hit |s| < 1e-13 and was cut short.
    pub singular: bool,
}

pub fn slope_sequence(p: Params, n: usize) -> SlopeSequence {
    let r = p.disc().sqrt();
    let s0 = (p.a() + r) / 2.0;
    let m1 = (-p.a() - r) / 2.0;
    let m2 = (-p.a() + r) / 2.0;
    let mut values = Vec::with_capacity(n + 1);
    let mut s = s0;
    let mut singular = false;
    values.push(s);
    for _ in 0..n {
        if s.abs() < 1e-13 {
            singular = true;
            break;
        }
        s = p.b() / s - p.a();
        values.push(s);
    }
    SlopeSequence {
        s0,
        m1,
        m2,
        mu: m2 / m1,
        j0: (p.a() + r) / p.a(),
        values,
        singular,
    }
}

/// Closed form of the slope sequence: s_n = (M1 - M2 mu^n j0) / (1 - mu^n j0).
pub fn slope_closed_form(p: Params, n: usize) -> f64 {
    let r = p.disc().sqrt();
    let m1 = (-p.a() - r) / 2.0;
    let m2 = (-p.a() + r) / 2.0;
    let mu = m2 / m1;
    let j0 = (p.a() + r) / p.a();
    let jn = mu.powi(n as i32) * j0;
    (m1 - m2 * jn) / (1.0 - jn)
}

/// The smallest n >= 1 with V^{-n} in the open second quadrant.
pub fn zigzag_index(p: Params, max_iter: usize) -> Result<usize> {
    let mut q = point_v(p);
    for n in 1..=max_iter {
        q = map::apply_inverse(p, q)?;
        if q.x < -AXIS_SNAP && q.y > AXIS_SNAP {
            return Ok(n);
        }
    }
    Err(Error::ZigzagExhausted { max_iter })
}

/// The straight legs alpha_1 .. alpha_{n0} of the zigzag part [V, V^{-n0}].
pub fn zigzag_legs(p: Params) -> Result<Vec<Segment>> {
    let n0 = zigzag_index(p, 10_000)?;
    let v = point_v(p);
    let mut legs = Vec::with_capacity(n0);
    let mut prev = v;
    for _ in 1..=n0 {
        let next = map::apply_inverse(p, prev)?;
        legs.push(Segment::new(prev, next));
        prev = next;
    }
    Ok(legs)
}

/// The pieces gamma_n = [Z^{2n-1}, Z^{2n+1}] and delta_n = [Z^{2n}, Z^{2n+2}]
/// of the unstable manifold, sliced from one arc.
#[derive(Debug, Clone)]
pub struct UnstablePieces {
    pub gamma: Vec<PolyLine>,
    pub delta: Vec<PolyLine>,
}

/// Slice the sub-polyline between two points lying on the arc.
fn slice_between(line: &PolyLine, a: Point, b: Point) -> PolyLine {
    let (ia, ta, _) = line.locate(a);
    let (ib, tb, _) = line.locate(b);
    let (lo, hi, rev) = if (ia, ta) <= (ib, tb) {
        ((ia, ta), (ib, tb), false)
    } else {
        ((ib, tb), (ia, ta), true)
    };
    let mut v: Vec<Point> = Vec::new();
    let (start, end) = if rev { (b, a) } else { (a, b) };
    v.push(start);
    for i in (lo.0 + 1)..=hi.0 {
        let pt = line.vertices()[i];
        if v.last().is_none_or(|l| l.dist(pt) > 1e-12) {
            v.push(pt);
        }
    }
    if v.last().is_none_or(|l| l.dist(end) > 1e-12) {
        v.push(end);
    } else {
        let n = v.len();
        v[n - 1] = end;
    }
    if rev {
        v.reverse();
    }
    PolyLine::new(v)
}

pub fn unstable_pieces(p: Params, count: usize) -> Result<UnstablePieces> {
    let arc = unstable_arc(p, count.max(1), DEFAULT_MAX_VERTICES)?;
    let z = point_z(p);
    let zk = |k: i64| iterate(p, z, k);
    let mut gamma = Vec::with_capacity(count);
    let mut delta = Vec::with_capacity(count);
    for n in 0..count as i64 {
        gamma.push(slice_between(arc.line(), zk(2 * n - 1)?, zk(2 * n + 1)?));
        delta.push(slice_between(arc.line(), zk(2 * n)?, zk(2 * n + 2)?));
    }
    Ok(UnstablePieces { gamma, delta })
}

/// The smallest i < count such that delta_i meets the y-axis, if any.
pub fn first_delta_crossing(p: Params, count: usize) -> Result<Option<usize>> {
    let pieces = unstable_pieces(p, count)?;
    for (i, d) in pieces.delta.iter().enumerate() {
        let xs: Vec<f64> = d.vertices().iter().map(|v| v.x).collect();
        let touches = xs.iter().any(|x| x.abs() <= AXIS_SNAP)
            || xs.windows(2).any(|w| w[0] * w[1] < 0.0);
        if touches {
            return Ok(Some(i));
        }
    }
    Ok(None)
}
