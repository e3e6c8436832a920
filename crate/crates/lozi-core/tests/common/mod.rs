//! Shared helpers for the integration suites: an independent sampling oracle
//! for the tangential/transversal dichotomy and a generator of randomized
//! local contact configurations.

use lozi_core::geometry::{Point, PolyLine};
use lozi_core::intersect::IntersectionKind;
use rand::Rng;

/// Independent classification by brute force: sample the boundary circle of
/// radius `eps` around `t`, delete the samples blocked by arc A, group the
/// rest into circular components, and see how many distinct components the
/// branches of arc B reach. Two or more means the contact is a crossing.
/// Returns `None` when the configuration is too degenerate to sample.
pub fn sampling_oracle(
    a: &PolyLine,
    b: &PolyLine,
    t: Point,
    eps: f64,
    n: usize,
) -> Option<IntersectionKind> {
    let band = eps * std::f64::consts::TAU / n as f64 * 3.0;
    let dist_to = |line: &PolyLine, p: Point| -> f64 { line.locate(p).2 };
    let mut blocked = vec![false; n];
    let mut pts = Vec::with_capacity(n);
    for (i, bl) in blocked.iter_mut().enumerate() {
        let th = std::f64::consts::TAU * i as f64 / n as f64;
        let p = Point::new(t.x + eps * th.cos(), t.y + eps * th.sin());
        *bl = dist_to(a, p) < band;
        pts.push(p);
    }
    if blocked.iter().all(|&x| x) {
        return None;
    }
    // circular component labels of the unblocked samples
    let mut comp = vec![usize::MAX; n];
    let start = (0..n).find(|&i| blocked[i])?; // no blocked sample: A misses the circle
    let mut c = 0usize;
    let mut prev_blocked = true;
    for k in 0..n {
        let i = (start + k) % n;
        if blocked[i] {
            prev_blocked = true;
            continue;
        }
        if prev_blocked {
            c += 1;
        }
        comp[i] = c;
        prev_blocked = false;
    }
    let mut reached: Vec<usize> = (0..n)
        .filter(|&i| !blocked[i] && dist_to(b, pts[i]) < band)
        .map(|i| comp[i])
        .collect();
    reached.sort_unstable();
    reached.dedup();
    match reached.len() {
        0 => None, // B leaves the ball only along A: undecidable by sampling
        1 => Some(IntersectionKind::Tangential),
        _ => Some(IntersectionKind::Transversal),
    }
}

pub struct ContactConfig {
    pub a: PolyLine,
    pub b: PolyLine,
    pub t: Point,
    /// Both arcs have a vertex at the contact.
    pub corner_corner: bool,
}

fn dir(th: f64) -> Point {
    Point::new(th.cos(), th.sin())
}

/// A randomized local contact at the origin: each arc is either a straight
/// chord through the contact or a two-segment corner with its vertex there.
/// All four branch directions are kept at least `sep` radians apart so the
/// configuration is classifiable.
pub fn random_contact(rng: &mut impl Rng, force_corner: bool, sep: f64) -> ContactConfig {
    let t = Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    loop {
        let a_corner = force_corner || rng.gen_bool(0.5);
        let b_corner = force_corner || rng.gen_bool(0.5);
        let mut angles: Vec<f64> = Vec::new();
        let th_a0: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let th_a1: f64 = if a_corner {
            rng.gen_range(0.0..std::f64::consts::TAU)
        } else {
            th_a0 + std::f64::consts::PI
        };
        let th_b0: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let th_b1: f64 = if b_corner {
            rng.gen_range(0.0..std::f64::consts::TAU)
        } else {
            th_b0 + std::f64::consts::PI
        };
        angles.extend([th_a0, th_a1, th_b0, th_b1]);
        let mut ok = true;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let mut d = (angles[i] - angles[j]).rem_euclid(std::f64::consts::TAU);
                if d > std::f64::consts::PI {
                    d = std::f64::consts::TAU - d;
                }
                if d < sep {
                    ok = false;
                }
            }
        }
        if !ok {
            continue;
        }
        let r = || -> f64 { 0.5 };
        let mk = |th0: f64, th1: f64, corner: bool| -> PolyLine {
            if corner {
                PolyLine::new(vec![t + dir(th0) * r(), t, t + dir(th1) * r()])
            } else {
                PolyLine::new(vec![t + dir(th0) * r(), t + dir(th1) * r()])
            }
        };
        return ContactConfig {
            a: mk(th_a0, th_a1, a_corner),
            b: mk(th_b0, th_b1, b_corner),
            t,
            corner_corner: a_corner && b_corner,
        };
    }
}
