//! Plane quadrics for QSLIM-style error metrics.

use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};

use crate::mesh::TriangleMesh;
use crate::Vec3;

/// A symmetric 4×4 plane quadric; `error(v) = [v;1]ᵀ Q [v;1]` is the
/// (weighted) sum of squared distances to the accumulated planes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadric {
    m: Matrix4<f64>,
}

impl Quadric {
    pub fn zero() -> Self {
        Self {
            m: Matrix4::zeros(),
        }
    }

    /// Quadric of the plane with unit normal `n` through point `p`,
    /// weighted by `weight`.
    pub fn from_plane(n: Vec3, p: Vec3, weight: f64) -> Self {
        let plane = Vector4::new(n.x, n.y, n.z, -n.dot(&p));
        Self {
            m: plane * plane.transpose() * weight,
        }
    }

    pub fn error(&self, v: Vec3) -> f64 {
        let h = Vector4::new(v.x, v.y, v.z, 1.0);
        (h.transpose() * self.m * h)[(0, 0)]
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self { m: self.m * factor }
    }

    /// Minimizer of the quadric, unless the 3×3 system is near-singular
    /// (condition number above `max_condition`).
    pub fn minimizer(&self, max_condition: f64) -> Option<Vec3> {
        let a = Matrix3::from_fn(|i, j| self.m[(i, j)]);
        let b = Vector3::new(self.m[(0, 3)], self.m[(1, 3)], self.m[(2, 3)]);
        let svd = nalgebra::SVD::new(a, true, true);
        let smax = svd.singular_values[0];
        let smin = svd.singular_values[2];
        if smin <= 0.0 || !smin.is_finite() || smax / smin > max_condition {
            return None;
        }
        svd.solve(&(-b), 0.0)
            .ok()
            .map(|x| Vec3::new(x[0], x[1], x[2]))
    }
}

impl std::ops::Add for Quadric {
    type Output = Quadric;
    fn add(self, rhs: Quadric) -> Quadric {
        Quadric { m: self.m + rhs.m }
    }
}

impl std::ops::AddAssign for Quadric {
    fn add_assign(&mut self, rhs: Quadric) {
        self.m += rhs.m;
    }
}

/// Area-weighted plane quadrics per vertex: each face contributes
/// `area(T) · (plane outer product)` to its three corners. Area weighting
/// keeps the metric independent of tessellation granularity.
pub fn vertex_quadrics(mesh: &TriangleMesh) -> Vec<Quadric> {
    let mut quadrics = vec![Quadric::zero(); mesh.num_vertices()];
    for &[a, b, c] in &mesh.faces {
        let (pa, pb, pc) = (mesh.vertices[a], mesh.vertices[b], mesh.vertices[c]);
        let cross = (pb - pa).cross(&(pc - pa));
        let len = cross.norm();
        if len < 1e-30 {
            continue;
        }
        let q = Quadric::from_plane(cross / len, pa, len / 2.0);
        quadrics[a] += q;
        quadrics[b] += q;
        quadrics[c] += q;
    }
    quadrics
}
