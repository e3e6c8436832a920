//! Polyline intersection with tangential/transversal classification, and
//! homoclinic-point detection for the saddle fixed point X.
//!
//! Classification follows the local definition: T is tangential when a small
//! disk around it minus the local piece of one arc has two components and
//! both local branches of the other arc stay in the closure of one of them;
//! transversal when they reach both.

use crate::geometry::{seg_seg_distance, Point, PolyLine};
use crate::manifold::{stable_arc, unstable_arc, ManifoldArc, DEFAULT_MAX_VERTICES};
use crate::map::{self, iterate, point_v, point_z, Params};
use crate::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntersectionKind {
    Tangential,
    Transversal,
}

#[derive(Debug, Clone)]
pub struct IntersectionRecord {
    pub point: Point,
    pub kind: IntersectionKind,
    /// The point coincides with a vertex of arc A / arc B (within tol).
    pub a_vertex: bool,
    pub b_vertex: bool,
    pub seg_a: usize,
    pub seg_b: usize,
    pub tol: f64,
    /// Set when the transversality margin is below 10*tol: the classification
    /// is geometrically ill-conditioned and must not be trusted blindly.
    pub unstable_classification: bool,
}

/// Local branch directions of a polyline at a point lying on it (unit
/// vectors pointing away from the point), plus the incident segment indices.
fn local_branches(line: &PolyLine, t: Point, tol: f64) -> Result<(Vec<Point>, Vec<usize>)> {
    let verts = line.vertices();
    let first = verts[0];
    let last = verts[verts.len() - 1];
    let d_end = t.dist(first).min(t.dist(last));
    if d_end < 2.0 * tol {
        return Err(Error::BoundaryAmbiguity { dist: d_end });
    }
    let (i, tt, _) = line.locate(t);
    // vertex contact when the closest approach is an interior vertex
    let vertex_idx = if tt <= 0.5 { i } else { i + 1 };
    let vp = verts[vertex_idx];
    if t.dist(vp) <= tol && vertex_idx > 0 && vertex_idx + 1 < verts.len() {
        let d_prev = verts[vertex_idx - 1] - vp;
        let d_next = verts[vertex_idx + 1] - vp;
        let n1 = d_prev.norm();
        let n2 = d_next.norm();
        Ok((
            vec![d_prev * (1.0 / n1), d_next * (1.0 / n2)],
            vec![vertex_idx - 1, vertex_idx],
        ))
    } else {
        let s = line.segment(i);
        let d = s.q - s.p;
        let n = d.norm();
        Ok((vec![d * (1.0 / n), d * (-1.0 / n)], vec![i]))
    }
}

/// Half the minimum distance from `t` to every feature of both arcs that is
/// not incident to it.
fn local_radius(a: &PolyLine, b: &PolyLine, t: Point, inc_a: &[usize], inc_b: &[usize]) -> f64 {
    let mut min = f64::MAX;
    let mut scan = |line: &PolyLine, inc: &[usize]| {
        for i in 0..line.num_segments() {
            if inc.contains(&i) {
                // still cap by the incident segment extent
                let s = line.segment(i);
                min = min.min(s.len());
                continue;
            }
            // skip segments adjacent to an incident one through a vertex at t
            let adjacent = inc.iter().any(|&j| i + 1 == j || j + 1 == i);
            let (_, d) = line.segment(i).closest(t);
            if adjacent {
                let s = line.segment(i);
                let far = if inc.contains(&(i + 1).min(line.num_segments() - 1)) {
                    s.p
                } else {
                    s.q
                };
                min = min.min(t.dist(far));
            } else {
                min = min.min(d);
            }
        }
    };
    scan(a, inc_a);
    scan(b, inc_b);
    min / 2.0
}

/// Classify the contact of arcs A and B at T (a point within `tol` of both).
pub fn classify_intersection(
    a: &PolyLine,
    b: &PolyLine,
    t: Point,
    tol: f64,
) -> Result<IntersectionKind> {
    let (kind, _) = classify_with_margin(a, b, t, tol)?;
    Ok(kind)
}

/// Classification plus the transversality margin (distance at radius eps from
/// B's branch endpoints to the wedge boundary of A).
pub(crate) fn classify_with_margin(
    a: &PolyLine,
    b: &PolyLine,
    t: Point,
    tol: f64,
) -> Result<(IntersectionKind, f64)> {
    let (dirs_a, inc_a) = local_branches(a, t, tol)?;
    let (dirs_b, inc_b) = local_branches(b, t, tol)?;
    let eps = local_radius(a, b, t, &inc_a, &inc_b).max(tol);

    // wedge of A: directions alpha1 -> alpha2; disk minus the wedge boundary
    // has two angular components [0, alpha) and (alpha, 2pi)
    let th = |d: Point| d.y.atan2(d.x);
    let tau = std::f64::consts::TAU;
    let a1 = th(dirs_a[0]);
    let alpha = (th(dirs_a[1]) - a1).rem_euclid(tau);
    let mut sides = [false, false];
    let mut margin = f64::MAX;
    for &db in &dirs_b {
        let beta = (th(db) - a1).rem_euclid(tau);
        // angular distance to the wedge boundary rays {0, alpha}
        let dist_ray = |x: f64| x.min(tau - x);
        let ang = dist_ray(beta).min(dist_ray((beta - alpha).rem_euclid(tau)));
        let lin = eps * ang.min(std::f64::consts::FRAC_PI_2).sin();
        margin = margin.min(lin);
        if lin <= tol {
            continue; // on the wedge boundary: in the closure of both components
        }
        if beta < alpha {
            sides[0] = true;
        } else {
            sides[1] = true;
        }
    }
    let kind = if sides[0] && sides[1] {
        IntersectionKind::Transversal
    } else {
        IntersectionKind::Tangential
    };
    Ok((kind, margin))
}

struct Candidate {
    seg_a: usize,
    seg_b: usize,
    point: Point,
    dist: f64,
}

fn pair_candidate(a: &PolyLine, b: &PolyLine, i: usize, j: usize, tol: f64) -> Option<Candidate> {
    let s = a.segment(i);
    let t = b.segment(j);
    // cheap bbox rejection
    let (sx0, sx1) = (s.p.x.min(s.q.x) - tol, s.p.x.max(s.q.x) + tol);
    let (sy0, sy1) = (s.p.y.min(s.q.y) - tol, s.p.y.max(s.q.y) + tol);
    if t.p.x.min(t.q.x) > sx1 || t.p.x.max(t.q.x) < sx0 {
        return None;
    }
    if t.p.y.min(t.q.y) > sy1 || t.p.y.max(t.q.y) < sy0 {
        return None;
    }
    let (d, u, v) = seg_seg_distance(s, t);
    if d > tol {
        return None;
    }
    let p = s.at(u);
    let q = t.at(v);
    Some(Candidate {
        seg_a: i,
        seg_b: j,
        point: (p + q) * 0.5,
        dist: d,
    })
}

fn candidates(a: &PolyLine, b: &PolyLine, tol: f64) -> Vec<Candidate> {
    let na = a.num_segments();
    let nb = b.num_segments();
    #[cfg(feature = "parallel")]
    {
        (0..na)
            .into_par_iter()
            .flat_map_iter(|i| (0..nb).filter_map(move |j| pair_candidate(a, b, i, j, tol)))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut out = Vec::new();
        for i in 0..na {
            for j in 0..nb {
                if let Some(c) = pair_candidate(a, b, i, j, tol) {
                    out.push(c);
                }
            }
        }
        out
    }
}

/// Sequential candidate scan regardless of the `parallel` feature (for
/// benchmarking the data-parallel path against a single-threaded baseline).
pub fn polyline_intersections_seq(a: &PolyLine, b: &PolyLine, tol: f64) -> Vec<IntersectionRecord> {
    let mut out = Vec::new();
    for i in 0..a.num_segments() {
        for j in 0..b.num_segments() {
            if let Some(c) = pair_candidate(a, b, i, j, tol) {
                out.push(c);
            }
        }
    }
    build_records(a, b, out, tol)
}

/// All points where the two arcs pass within `tol` of each other,
/// deduplicated by clustering within 10*tol, each classified.
pub fn polyline_intersections(a: &PolyLine, b: &PolyLine, tol: f64) -> Vec<IntersectionRecord> {
    assert!(tol > 0.0);
    let cands = candidates(a, b, tol);
    build_records(a, b, cands, tol)
}

fn build_records(
    a: &PolyLine,
    b: &PolyLine,
    mut cands: Vec<Candidate>,
    tol: f64,
) -> Vec<IntersectionRecord> {
    cands.sort_by_key(|p| (p.seg_a, p.seg_b));
    // greedy clustering within 10*tol, keeping the candidate nearest both arcs
    let mut clusters: Vec<Candidate> = Vec::new();
    for c in cands {
        if let Some(best) = clusters
            .iter_mut()
            .find(|k| k.point.dist(c.point) <= 10.0 * tol)
        {
            if c.dist < best.dist {
                *best = c;
            }
        } else {
            clusters.push(c);
        }
    }
    let mut out = Vec::new();
    for c in clusters {
        let Ok((kind, margin)) = classify_with_margin(a, b, c.point, tol) else {
            continue; // dead zone at an arc terminus
        };
        let near_vertex = |line: &PolyLine, p: Point| {
            line.vertices().iter().any(|v| v.dist(p) <= tol)
        };
        out.push(IntersectionRecord {
            point: c.point,
            kind,
            a_vertex: near_vertex(a, c.point),
            b_vertex: near_vertex(b, c.point),
            seg_a: c.seg_a,
            seg_b: c.seg_b,
            tol,
            unstable_classification: margin < 10.0 * tol,
        });
    }
    out.sort_by_key(|p| (p.seg_a, p.seg_b));
    out
}

/// Default tolerance: 1e-9 times the diameter of the (bounded) unstable arc.
pub fn default_tol(arc: &ManifoldArc) -> f64 {
    1e-9 * arc.line().diameter()
}

fn unstable_for_depth(p: Params, depth: usize) -> Result<ManifoldArc> {
    let pairs = depth.div_ceil(2).max(1);
    unstable_arc(p, pairs, DEFAULT_MAX_VERTICES)
}

/// Homoclinic points on the fundamental stable segment X -> V: intersections
/// of the depth-truncated unstable arc with the straight segment, excluding a
/// ball of radius 100*tol around X.
pub fn homoclinic_on_fundamental(
    p: Params,
    depth: usize,
    tol: f64,
) -> Result<Vec<IntersectionRecord>> {
    let arc = unstable_for_depth(p, depth)?;
    let (x, _) = map::fixed_points(p);
    let v = point_v(p);
    let seg = PolyLine::new(vec![x, v]);
    let mut recs: Vec<IntersectionRecord> = polyline_intersections(arc.line(), &seg, tol)
        .into_iter()
        .filter(|r| r.point.dist(x) > 100.0 * tol)
        .collect();
    // classification at the termini of the short segment is refused by the
    // dead-zone rule; recover plain crossings there as unclassified records
    recs.retain(|r| r.point.dist(x) > 100.0 * tol);
    Ok(recs)
}

/// True when the truncated arcs exhibit a homoclinic point at this depth.
pub fn has_homoclinic(p: Params, depth: usize, tol: f64) -> Result<bool> {
    Ok(!homoclinic_on_fundamental(p, depth, tol)?.is_empty())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitTag {
    /// Within 10*tol of Z^k.
    Z(i64),
    /// Within 10*tol of V^k.
    V(i64),
    /// Within the X-exclusion ball.
    X,
    Other,
}

#[derive(Debug, Clone)]
pub struct OrbitRecord {
    pub rec: IntersectionRecord,
    pub orbit: OrbitTag,
}

#[derive(Debug, Clone)]
pub struct TangencyReport {
    pub records: Vec<OrbitRecord>,
    /// Every intersection besides X is tangential (within classification
    /// stability: ill-conditioned records do not count as transversal).
    pub all_tangential: bool,
}

/// Intersect the truncated arcs of both manifolds and attribute every
/// intersection to the orbit of Z, the orbit of V, or X; the expectation at a
/// boundary parameter is that nothing is left "other" and nothing is
/// robustly transversal.
pub fn check_last_tangency(p: Params, depth: usize, tol: f64) -> Result<TangencyReport> {
    let wu = unstable_for_depth(p, depth)?;
    let ws = stable_arc(p, depth, DEFAULT_MAX_VERTICES)?;
    let recs = polyline_intersections(wu.line(), ws.line(), tol);
    let (x, _) = map::fixed_points(p);
    let z = point_z(p);
    let v = point_v(p);
    let kmax = depth as i64 + 4;
    let mut orbit_pts: Vec<(OrbitTag, Point)> = Vec::new();
    for k in -kmax..=kmax {
        if let Ok(q) = iterate(p, z, k) {
            orbit_pts.push((OrbitTag::Z(k), q));
        }
        if let Ok(q) = iterate(p, v, k) {
            orbit_pts.push((OrbitTag::V(k), q));
        }
    }
    let mut records = Vec::with_capacity(recs.len());
    let mut all_tangential = true;
    for rec in recs {
        let orbit = if rec.point.dist(x) <= 100.0 * tol {
            OrbitTag::X
        } else {
            orbit_pts
                .iter()
                .filter(|(_, q)| q.dist(rec.point) <= 10.0 * tol)
                .min_by(|(_, q1), (_, q2)| {
                    q1.dist(rec.point).total_cmp(&q2.dist(rec.point))
                })
                .map(|(tag, _)| *tag)
                .unwrap_or(OrbitTag::Other)
        };
        if orbit != OrbitTag::X
            && rec.kind == IntersectionKind::Transversal
            && !rec.unstable_classification
        {
            all_tangential = false;
        }
        records.push(OrbitRecord { rec, orbit });
    }
    Ok(TangencyReport {
        records,
        all_tangential,
    })
}
