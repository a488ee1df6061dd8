//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced by mesh, point-cloud, and I/O operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate triangle (area below the degeneracy threshold)")]
    DegenerateTriangle,

    #[error("size mismatch for {what}: expected {expected}, got {actual}")]
    SizeMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("empty input")]
    EmptyInput,

    #[error("point cloud is empty")]
    EmptyCloud,

    #[error("mesh is empty")]
    EmptyMesh,

    #[error("too few neighbors: need at least {needed}, got {got}")]
    TooFewNeighbors { needed: usize, got: usize },

    #[error("input points are collinear; no 2D triangulation exists")]
    CollinearInput,

    #[error("too few points: need at least {needed}, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("center point participates in no triangle of the local triangulation")]
    IsolatedCenter,

    #[error("invalid torus radii: require R > r > 0 (got R={major}, r={minor})")]
    InvalidRadii { major: f64, minor: f64 },

    #[error(
        "tube radius {r_tube} too large for curve with max curvature {max_curvature}; \
         the tube would locally self-intersect"
    )]
    SelfIntersectingTube { r_tube: f64, max_curvature: f64 },

    #[error("Poisson-disk radius bisection failed to reach target count {target} after {iterations} iterations")]
    UnreachableTarget { target: usize, iterations: usize },

    #[error("mesh has no vertex UV parameters")]
    MissingUv,

    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
