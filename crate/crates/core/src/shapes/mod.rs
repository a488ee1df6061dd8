//! Analytic evaluation geometry: icosphere subdivisions, grid-triangulated
//! tori, and tube knots, each with ground-truth normals and total-curvature
//! density derived from the parameterization.

mod tube;

pub use tube::{least_aligned_axis, KnotCurve, TubeSurface};

use std::collections::HashMap;
use std::f64::consts::TAU;

use crate::curvature::CurvatureField;
use crate::error::{Error, Result};
use crate::mesh::TriangleMesh;
use crate::Vec3;

/// A parametric surface with analytic normals and principal curvatures.
#[derive(Debug, Clone)]
pub enum ParametricSurface {
    Sphere { radius: f64 },
    Torus { major: f64, minor: f64 },
    Tube(TubeSurface),
}

impl ParametricSurface {
    pub fn sphere(radius: f64) -> Self {
        ParametricSurface::Sphere { radius }
    }

    pub fn torus(major: f64, minor: f64) -> Result<Self> {
        if !(major > minor && minor > 0.0) {
            return Err(Error::InvalidRadii { major, minor });
        }
        Ok(ParametricSurface::Torus { major, minor })
    }

    pub fn tube(curve: KnotCurve, r_tube: f64) -> Result<Self> {
        Ok(ParametricSurface::Tube(TubeSurface::new(curve, r_tube)?))
    }

    /// Surface point at (u, v).
    ///
    /// Sphere: u is azimuth, v is latitude. Torus and tube: u runs along the
    /// major loop / centerline, v around the minor circle.
    pub fn position(&self, u: f64, v: f64) -> Vec3 {
        match self {
            ParametricSurface::Sphere { radius } => {
                Vec3::new(v.cos() * u.cos(), v.cos() * u.sin(), v.sin()) * *radius
            }
            ParametricSurface::Torus { major, minor } => {
                let w = major + minor * v.cos();
                Vec3::new(w * u.cos(), w * u.sin(), minor * v.sin())
            }
            ParametricSurface::Tube(tube) => tube.position(u, v),
        }
    }

    /// Outward unit normal at (u, v).
    pub fn normal(&self, u: f64, v: f64) -> Vec3 {
        match self {
            ParametricSurface::Sphere { .. } => {
                Vec3::new(v.cos() * u.cos(), v.cos() * u.sin(), v.sin())
            }
            ParametricSurface::Torus { .. } => {
                Vec3::new(v.cos() * u.cos(), v.cos() * u.sin(), v.sin())
            }
            ParametricSurface::Tube(tube) => tube.normal(u, v),
        }
    }

    /// Principal curvatures (k₁, k₂) at (u, v). Signs follow the outward
    /// normal convention; only the squares matter downstream.
    pub fn principal_curvatures(&self, u: f64, v: f64) -> (f64, f64) {
        match self {
            ParametricSurface::Sphere { radius } => (1.0 / radius, 1.0 / radius),
            ParametricSurface::Torus { major, minor } => {
                (v.cos() / (major + minor * v.cos()), 1.0 / minor)
            }
            ParametricSurface::Tube(tube) => tube.principal_curvatures(u, v),
        }
    }

    /// Total-curvature density `k₁² + k₂²` at (u, v).
    pub fn density(&self, u: f64, v: f64) -> f64 {
        let (k1, k2) = self.principal_curvatures(u, v);
        k1 * k1 + k2 * k2
    }

    /// Analytic unit normal at every mesh vertex, from the stored UVs.
    pub fn vertex_normals(&self, mesh: &TriangleMesh) -> Result<Vec<Vec3>> {
        let uv = mesh.vertex_uv.as_ref().ok_or(Error::MissingUv)?;
        Ok(uv.iter().map(|&(u, v)| self.normal(u, v)).collect())
    }

    /// Analytic density at every mesh vertex, from the stored UVs.
    pub fn vertex_densities(&self, mesh: &TriangleMesh) -> Result<Vec<f64>> {
        let uv = mesh.vertex_uv.as_ref().ok_or(Error::MissingUv)?;
        Ok(uv.iter().map(|&(u, v)| self.density(u, v)).collect())
    }
}

/// Total-curvature density `k₁² + k₂²` of `surface` at (u, v).
pub fn analytic_density(surface: &ParametricSurface, u: f64, v: f64) -> f64 {
    surface.density(u, v)
}

/// Ground-truth per-triangle total curvature by one-point-per-vertex
/// quadrature: `κ_T = mean(vertex densities) · area(T)`.
///
/// This is the reference integrand used for RMSE comparisons.
pub fn gt_per_triangle(mesh: &TriangleMesh, surface: &ParametricSurface) -> Result<CurvatureField> {
    let densities = surface.vertex_densities(mesh)?;
    let per_triangle = mesh
        .faces
        .iter()
        .enumerate()
        .map(|(fi, &[a, b, c])| {
            (densities[a] + densities[b] + densities[c]) / 3.0 * mesh.face_area(fi)
        })
        .collect();
    Ok(CurvatureField {
        per_triangle,
        per_vertex_density: None,
        degenerate_faces: 0,
    })
}

/// Icosahedron subdivided `subdivisions` times, every vertex projected to
/// distance `radius` from the origin. `20·4^s` faces, `10·4^s + 2` vertices.
pub fn icosphere(subdivisions: u32, radius: f64) -> TriangleMesh {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let mut vertices: Vec<Vec3> = [
        (-1.0, phi, 0.0),
        (1.0, phi, 0.0),
        (-1.0, -phi, 0.0),
        (1.0, -phi, 0.0),
        (0.0, -1.0, phi),
        (0.0, 1.0, phi),
        (0.0, -1.0, -phi),
        (0.0, 1.0, -phi),
        (phi, 0.0, -1.0),
        (phi, 0.0, 1.0),
        (-phi, 0.0, -1.0),
        (-phi, 0.0, 1.0),
    ]
    .into_iter()
    .map(|(x, y, z)| Vec3::new(x, y, z).normalize())
    .collect();

    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];

    for _ in 0..subdivisions {
        let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
        let mut next_faces = Vec::with_capacity(faces.len() * 4);
        for face in &faces {
            let mut mids = [0usize; 3];
            for i in 0..3 {
                let a = face[i];
                let b = face[(i + 1) % 3];
                let key = (a.min(b), a.max(b));
                mids[i] = *midpoints.entry(key).or_insert_with(|| {
                    vertices.push(((vertices[a] + vertices[b]) / 2.0).normalize());
                    vertices.len() - 1
                });
            }
            next_faces.push([face[0], mids[0], mids[2]]);
            next_faces.push([face[1], mids[1], mids[0]]);
            next_faces.push([face[2], mids[2], mids[1]]);
            next_faces.push(mids);
        }
        faces = next_faces;
    }

    let uv = vertices
        .iter()
        .map(|p| (p.y.atan2(p.x), p.z.clamp(-1.0, 1.0).asin()))
        .collect();
    let mut mesh = TriangleMesh::new(vertices.iter().map(|p| p * radius).collect(), faces);
    mesh.vertex_uv = Some(uv);
    mesh
}

/// Closed torus from an `nu × nv` grid of the standard parameterization,
/// each quad split along one diagonal. `nu·nv` vertices, `2·nu·nv` faces.
pub fn torus_grid(major: f64, minor: f64, nu: usize, nv: usize) -> Result<TriangleMesh> {
    if !(major > minor && minor > 0.0) {
        return Err(Error::InvalidRadii { major, minor });
    }
    assert!(nu >= 3 && nv >= 3, "torus grid needs nu, nv >= 3");
    let surface = ParametricSurface::Torus { major, minor };
    Ok(closed_grid_mesh(nu, nv, |u, v| surface.position(u, v)))
}

/// Tube of radius `r_tube` swept along `curve` with a rotation-minimizing
/// frame; closed genus-1 mesh with `nu·nv` vertices.
pub fn tube_knot(curve: KnotCurve, r_tube: f64, nu: usize, nv: usize) -> Result<TriangleMesh> {
    assert!(nu >= 8 && nv >= 8, "tube grid needs nu, nv >= 8");
    let tube = TubeSurface::new(curve, r_tube)?;
    Ok(closed_grid_mesh(nu, nv, |t, theta| tube.position(t, theta)))
}

/// Doubly periodic grid mesh over [0,2π)², vertex (i, j) at index `i·nv + j`.
fn closed_grid_mesh(nu: usize, nv: usize, position: impl Fn(f64, f64) -> Vec3) -> TriangleMesh {
    let mut vertices = Vec::with_capacity(nu * nv);
    let mut uv = Vec::with_capacity(nu * nv);
    for i in 0..nu {
        let u = TAU * i as f64 / nu as f64;
        for j in 0..nv {
            let v = TAU * j as f64 / nv as f64;
            vertices.push(position(u, v));
            uv.push((u, v));
        }
    }
    let idx = |i: usize, j: usize| (i % nu) * nv + (j % nv);
    let mut faces = Vec::with_capacity(2 * nu * nv);
    for i in 0..nu {
        for j in 0..nv {
            let v00 = idx(i, j);
            let v10 = idx(i + 1, j);
            let v11 = idx(i + 1, j + 1);
            let v01 = idx(i, j + 1);
            faces.push([v00, v10, v11]);
            faces.push([v00, v11, v01]);
        }
    }
    let mut mesh = TriangleMesh::new(vertices, faces);
    mesh.vertex_uv = Some(uv);
    mesh
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn icosahedron_counts() {
        let m = icosphere(0, 1.0);
        assert_eq!(m.num_vertices(), 12);
        assert_eq!(m.num_faces(), 20);
    }

    #[test]
    fn icosphere_counts_and_radius() {
        for s in 0..5u32 {
            let radius = 1.7;
            let m = icosphere(s, radius);
            assert_eq!(m.num_faces(), 20 * 4usize.pow(s));
            assert_eq!(m.num_vertices(), 10 * 4usize.pow(s) + 2);
            assert_eq!(m.euler_characteristic(), 2);
            assert!(m.is_closed_manifold());
            assert!(m.signed_volume() > 0.0);
            for v in &m.vertices {
                assert!((v.norm() - radius).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn torus_grid_counts_and_topology() {
        let m = torus_grid(2.0, 1.0, 9, 9).unwrap();
        assert_eq!(m.num_vertices(), 81);
        assert_eq!(m.num_faces(), 162);
        for n in [9usize, 18, 36] {
            let m = torus_grid(2.0, 1.0, n, n).unwrap();
            assert_eq!(m.euler_characteristic(), 0);
            assert!(m.is_closed_manifold());
            assert!(m.signed_volume() > 0.0);
        }
    }

    #[test]
    fn torus_grid_first_vertex() {
        let m = torus_grid(2.0, 1.0, 9, 9).unwrap();
        assert_relative_eq!(m.vertices[0], Vec3::new(3.0, 0.0, 0.0), epsilon = 1e-12);
    }

    #[test]
    fn torus_invalid_radii_rejected() {
        assert!(matches!(
            torus_grid(1.0, 2.0, 9, 9),
            Err(Error::InvalidRadii { .. })
        ));
        assert!(matches!(
            ParametricSurface::torus(1.0, -0.5),
            Err(Error::InvalidRadii { .. })
        ));
    }

    #[test]
    fn degenerate_knot_tube_reproduces_torus_grid() {
        // (1,0) torus knot is the planar circle of radius 3; sweeping a
        // radius-1 tube over it is exactly torus_grid(3, 1)
        let tube = tube_knot(KnotCurve::TorusKnot { p: 1, q: 0 }, 1.0, 24, 16).unwrap();
        let torus = torus_grid(3.0, 1.0, 24, 16).unwrap();
        assert_eq!(tube.faces, torus.faces);
        for (a, b) in tube.vertices.iter().zip(&torus.vertices) {
            assert!((a - b).norm() < 1e-6, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn figure_eight_tube_topology() {
        let m = tube_knot(KnotCurve::FigureEight, 0.25, 400, 40).unwrap();
        assert_eq!(m.euler_characteristic(), 0);
        assert!(m.is_closed_manifold());
    }

    #[test]
    fn torus_knot_tube_topology() {
        let m = tube_knot(KnotCurve::TorusKnot { p: 2, q: 3 }, 0.25, 256, 24).unwrap();
        assert_eq!(m.euler_characteristic(), 0);
        assert!(m.is_closed_manifold());
    }

    #[test]
    fn tube_frame_twist_is_bounded() {
        // consecutive frame rotation about the tangent stays below 2π/nv
        let (nu, nv) = (400usize, 40usize);
        let tube = TubeSurface::new(KnotCurve::FigureEight, 0.25).unwrap();
        let mut max_twist: f64 = 0.0;
        for i in 0..nu {
            let t0 = TAU * i as f64 / nu as f64;
            let t1 = TAU * (i + 1) as f64 / nu as f64;
            let (e1_a, _, tan_a) = tube.frame_at(t0);
            let (e1_b, _, tan_b) = tube.frame_at(t1 % TAU);
            // reference: transport of e1_a to t1 with no twist
            let transported = super::tube::double_reflection(
                tube.curve.position(t0),
                tan_a,
                e1_a,
                tube.curve.position(t1),
                tube.curve.tangent(t1),
            );
            let twist = transported
                .cross(&e1_b)
                .dot(&tan_b)
                .atan2(transported.dot(&e1_b))
                .abs();
            max_twist = max_twist.max(twist);
        }
        assert!(max_twist < TAU / nv as f64, "max twist {max_twist}");
    }

    #[test]
    fn analytic_density_examples() {
        let sphere = ParametricSurface::sphere(1.0);
        assert_relative_eq!(analytic_density(&sphere, 0.3, -0.8), 2.0, epsilon = 1e-12);

        let torus = ParametricSurface::torus(2.0, 1.0).unwrap();
        // outer equator: (1/3)² + 1
        assert_relative_eq!(
            analytic_density(&torus, 0.7, 0.0),
            1.0 / 9.0 + 1.0,
            epsilon = 1e-12
        );
        // top circle: 0 + 1
        assert_relative_eq!(
            analytic_density(&torus, 0.7, std::f64::consts::FRAC_PI_2),
            1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn normals_match_finite_difference_cross_product() {
        let h = 1e-5 * TAU;
        let surfaces = vec![
            ParametricSurface::sphere(1.3),
            ParametricSurface::torus(2.0, 1.0).unwrap(),
            ParametricSurface::tube(KnotCurve::TorusKnot { p: 2, q: 3 }, 0.25).unwrap(),
            ParametricSurface::tube(KnotCurve::FigureEight, 0.25).unwrap(),
        ];
        for surface in &surfaces {
            for k in 0..40 {
                // interval midpoints of the stored frame grid, away from the
                // sphere poles
                let u = (k as f64 + 0.5) * TAU / 40.0;
                let v = match surface {
                    ParametricSurface::Sphere { .. } => -1.2 + 2.4 * (k as f64 / 39.0),
                    _ => (k as f64 + 0.31) * TAU / 40.0,
                };
                let pu = (surface.position(u + h, v) - surface.position(u - h, v)) / (2.0 * h);
                let pv = (surface.position(u, v + h) - surface.position(u, v - h)) / (2.0 * h);
                let fd_normal = pu.cross(&pv).normalize();
                let analytic = surface.normal(u, v);
                assert!(
                    (fd_normal - analytic).norm() < 1e-6,
                    "fd {fd_normal:?} vs analytic {analytic:?} at ({u}, {v})"
                );
            }
        }
    }

    #[test]
    fn density_matches_finite_difference_shape_operator() {
        let h = 2e-4;
        let surfaces = vec![
            ParametricSurface::sphere(1.0),
            ParametricSurface::torus(2.0, 1.0).unwrap(),
            ParametricSurface::tube(KnotCurve::TorusKnot { p: 2, q: 3 }, 0.25).unwrap(),
            ParametricSurface::tube(KnotCurve::FigureEight, 0.25).unwrap(),
        ];
        for surface in &surfaces {
            for k in 0..25 {
                let u = (k as f64 + 0.5) * TAU / 25.0;
                let v = match surface {
                    ParametricSurface::Sphere { .. } => -1.1 + 2.2 * (k as f64 / 24.0),
                    _ => (k as f64 + 0.47) * TAU / 25.0,
                };
                let p = |du: f64, dv: f64| surface.position(u + du, v + dv);
                let pu = (p(h, 0.0) - p(-h, 0.0)) / (2.0 * h);
                let pv = (p(0.0, h) - p(0.0, -h)) / (2.0 * h);
                let puu = (p(h, 0.0) - p(0.0, 0.0) * 2.0 + p(-h, 0.0)) / (h * h);
                let pvv = (p(0.0, h) - p(0.0, 0.0) * 2.0 + p(0.0, -h)) / (h * h);
                let puv = (p(h, h) - p(h, -h) - p(-h, h) + p(-h, -h)) / (4.0 * h * h);
                let n = pu.cross(&pv).normalize();
                let (e, f, g) = (pu.dot(&pu), pu.dot(&pv), pv.dot(&pv));
                let (l, m, nn) = (puu.dot(&n), puv.dot(&n), pvv.dot(&n));
                let det = e * g - f * f;
                let gauss = (l * nn - m * m) / det;
                let mean = (e * nn - 2.0 * f * m + g * l) / (2.0 * det);
                let fd_density = 4.0 * mean * mean - 2.0 * gauss;
                let analytic = surface.density(u, v);
                assert!(
                    (fd_density - analytic).abs() <= 1e-4 * analytic.abs().max(1.0),
                    "fd {fd_density} vs analytic {analytic} at ({u}, {v})"
                );
            }
        }
    }

    #[test]
    fn gt_per_triangle_requires_uv() {
        let mut m = icosphere(1, 1.0);
        m.vertex_uv = None;
        let surface = ParametricSurface::sphere(1.0);
        assert!(matches!(
            gt_per_triangle(&m, &surface),
            Err(Error::MissingUv)
        ));
    }

    #[test]
    fn gt_per_triangle_sphere_is_twice_area() {
        let m = icosphere(2, 1.0);
        let surface = ParametricSurface::sphere(1.0);
        let gt = gt_per_triangle(&m, &surface).unwrap();
        for (fi, &kappa) in gt.per_triangle.iter().enumerate() {
            assert_relative_eq!(kappa, 2.0 * m.face_area(fi), epsilon = 1e-12);
        }
    }

    #[test]
    fn gt_total_matches_dense_quadrature_on_torus() {
        let (major, minor) = (2.0, 1.0);
        let m = torus_grid(major, minor, 36, 36).unwrap();
        let surface = ParametricSurface::torus(major, minor).unwrap();
        let gt = gt_per_triangle(&m, &surface).unwrap();
        let total: f64 = gt.per_triangle.iter().sum();

        // dense quadrature of ∫ (k₁²+k₂²) dA over the parameter domain,
        // dA = r (R + r cos v) du dv
        let n = 2000;
        let mut integral = 0.0;
        let step = TAU / n as f64;
        for j in 0..n {
            let v = (j as f64 + 0.5) * step;
            let density = surface.density(0.0, v);
            integral += density * minor * (major + minor * v.cos()) * step * TAU;
        }
        assert!(
            (total - integral).abs() < 0.02 * integral,
            "grid total {total} vs quadrature {integral}"
        );
    }
}
