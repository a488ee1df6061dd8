//! Total curvature estimation on triangle meshes and oriented point clouds.
//!
//! The central quantity is the per-triangle total curvature
//! `κ_T = ∫_T (k₁² + k₂²)`, estimated as the Dirichlet energy of the
//! piecewise-linear Gauss map: with `S_T` the triangle's cotangent stiffness
//! matrix and `N_T` the matrix of its three vertex normals,
//! `κ_T ≈ trace(N_T · S_T · N_Tᵀ)`.
//!
//! On top of that kernel the crate provides:
//!
//! - [`curvature`]: per-triangle totals and per-vertex curvature densities on
//!   meshes;
//! - [`pointcloud`]: the same quantity on oriented point clouds via k-NN,
//!   tangent-plane Delaunay one-rings, and lifted triangles, plus PCA normal
//!   estimation with minimum-spanning-tree orientation;
//! - [`shapes`]: analytic evaluation geometry (icospheres, grid tori, tube
//!   knots) with ground-truth normals and curvature densities;
//! - [`sampling`]: seeded Poisson-disk, nonuniform, and area-uniform surface
//!   sampling;
//! - [`decimation`]: curvature-weighted QSLIM and shortest-edge-midpoint
//!   mesh decimation;
//! - [`metrics`]: RMSE and sampled Hausdorff distances;
//! - [`io`]: OBJ/PLY/XYZ/CSV readers and writers and a diverging color map.

pub mod curvature;
pub mod decimation;
pub mod error;
pub mod io;
pub mod mesh;
pub mod metrics;
pub mod pointcloud;
pub mod sampling;
pub mod shapes;
pub mod stiffness;

/// 3D vector / point type used throughout the crate.
pub type Vec3 = nalgebra::Vector3<f64>;

pub use error::{Error, Result};
pub use mesh::{PointCloud, TriangleMesh};
pub use stiffness::{
    corner_angles, dirichlet_energy, per_triangle_stiffness, triangle_area, TriangleStiffness,
};
