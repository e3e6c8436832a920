//! Invariant manifolds of the Lozi map `L(x, y) = (1 + y - a|x|, b x)`,
//! homoclinic-intersection detection and classification, and tracing of the
//! parameter-space curves bounding the region where homoclinic points of the
//! saddle fixed point X exist.
//!
//! The map is piecewise affine, so finite pieces of the stable and unstable
//! manifolds of X are polygonal lines and can be computed exactly up to
//! floating-point rounding: a straight seed segment on the eigenline is pushed
//! through the map, splitting every segment where it crosses the break line.
//!
//! Modules:
//! - [`map`] — the map, its inverse, fixed points, eigen data, the points Z
//!   (first crossing of the unstable manifold with the positive x-axis) and V
//!   (first crossing of the stable manifold with the negative y-axis).
//! - [`manifold`] — labeled polygonal arcs of the manifolds, the slope
//!   recurrence along the stable manifold, and the zigzag structure.
//! - [`intersect`] — polyline intersection with tangential/transversal
//!   classification and homoclinic detection.
//! - [`boundary`] — defining conditions of the boundary curves, curve tracing,
//!   endpoint solving, and algebraic cross-checks.

pub mod boundary;
pub mod geometry;
pub mod intersect;
pub mod manifold;
pub mod map;

pub use geometry::{Point, PolyLine, Segment};
pub use map::Params;

/// Errors shared across the crate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("parameters (a={a}, b={b}) outside the admissible region: {why}")]
    BadParams { a: f64, b: f64, why: &'static str },
    #[error("non-finite input coordinate")]
    NonFinite,
    #[error("the inverse map is singular at b = 0")]
    SingularMap,
    #[error("iteration count {k} exceeds the limit of 10^6")]
    IterationLimit { k: i64 },
    #[error("orbit diverged; last finite iterate index {last_finite}")]
    Diverged { last_finite: i64 },
    #[error("vertex budget {max} exceeded at depth {depth}")]
    VertexBudget { max: usize, depth: usize },
    #[error("no iterate of V entered the second quadrant within {max_iter} steps")]
    ZigzagExhausted { max_iter: usize },
    #[error("classification undefined within {dist} of an arc terminus")]
    BoundaryAmbiguity { dist: f64 },
    #[error("depth {depth} too small to realize anchor Z^{needed}")]
    InsufficientDepth { depth: usize, needed: i64 },
    #[error("no sign change for {what} in [{lo}, {hi}]")]
    NoBracket { what: &'static str, lo: f64, hi: f64 },
    #[error("no convergence after {steps} steps (residuals {r1:e}, {r2:e})")]
    NoConvergence { steps: usize, r1: f64, r2: f64 },
    #[error("negative radicand {radicand} in radical form")]
    NegativeRadicand { radicand: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
