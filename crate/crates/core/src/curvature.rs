//! Total curvature on triangle meshes.
//!
//! `total_curvature_per_triangle` evaluates `κ_T = trace(N_T S_T N_Tᵀ)` per
//! face, i.e. the sum over the three coordinate functions of the Gauss map of
//! their Dirichlet energies. Values are integrals (dimensionless); dividing a
//! vertex ring's integral by its ring area gives the pointwise density
//! `k₁² + k₂²` reported by [`per_vertex_curvature_density`].

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mesh::TriangleMesh;
use crate::stiffness::{degenerate_area_eps, per_triangle_stiffness, triangle_area};
use crate::Vec3;

/// Per-triangle total curvature, with an optional per-vertex density view.
#[derive(Debug, Clone, Default)]
pub struct CurvatureField {
    /// One `κ_T` per face.
    pub per_triangle: Vec<f64>,
    /// Pointwise density per vertex (1/length²), if computed.
    pub per_vertex_density: Option<Vec<f64>>,
    /// Faces skipped as degenerate (assigned `κ_T = 0`).
    pub degenerate_faces: usize,
}

impl CurvatureField {
    /// Compute and store the per-vertex density view.
    pub fn attach_vertex_density(&mut self, mesh: &TriangleMesh) -> &[f64] {
        let density = per_vertex_curvature_density(mesh, self);
        self.per_vertex_density = Some(density);
        self.per_vertex_density.as_deref().unwrap()
    }
}

/// Area-weighted vertex normals together with any isolated vertices found.
#[derive(Debug, Clone)]
pub struct VertexNormals {
    /// One unit normal per vertex; zero vector for isolated vertices.
    pub normals: Vec<Vec3>,
    /// Vertices with no incident face.
    pub isolated: Vec<usize>,
}

/// Per-vertex normals as the normalized area-weighted sum of incident face
/// normals. Vertices without incident faces get a zero normal and are listed
/// in [`VertexNormals::isolated`].
pub fn vertex_normals_area_weighted(mesh: &TriangleMesh) -> Result<VertexNormals> {
    if mesh.is_empty() {
        return Err(Error::EmptyMesh);
    }
    let mut sums = vec![Vec3::zeros(); mesh.num_vertices()];
    for &[a, b, c] in &mesh.faces {
        let (pa, pb, pc) = (mesh.vertices[a], mesh.vertices[b], mesh.vertices[c]);
        // cross product = 2 · area · unit normal, so summing it is area weighting
        let weighted = (pb - pa).cross(&(pc - pa));
        sums[a] += weighted;
        sums[b] += weighted;
        sums[c] += weighted;
    }
    let mut isolated = Vec::new();
    let mut seen = vec![false; mesh.num_vertices()];
    for &[a, b, c] in &mesh.faces {
        seen[a] = true;
        seen[b] = true;
        seen[c] = true;
    }
    let normals = sums
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            if !seen[i] {
                isolated.push(i);
                return Vec3::zeros();
            }
            let n = s.norm();
            if n == 0.0 {
                // incident faces cancelled exactly; treat like isolated
                isolated.push(i);
                Vec3::zeros()
            } else {
                s / n
            }
        })
        .collect();
    Ok(VertexNormals { normals, isolated })
}

/// Total curvature `κ_T = trace(N_T S_T N_Tᵀ)` for every face.
///
/// `normals` supplies one unit normal per vertex. Degenerate faces contribute
/// `κ_T = 0` and are counted in the result instead of aborting the run.
pub fn total_curvature_per_triangle(
    mesh: &TriangleMesh,
    normals: &[Vec3],
) -> Result<CurvatureField> {
    if normals.len() != mesh.num_vertices() {
        return Err(Error::SizeMismatch {
            what: "vertex normals",
            expected: mesh.num_vertices(),
            actual: normals.len(),
        });
    }
    let per_triangle: Vec<f64> = mesh
        .faces
        .par_iter()
        .map(|&[a, b, c]| {
            triangle_total_curvature(
                mesh.vertices[a],
                mesh.vertices[b],
                mesh.vertices[c],
                normals[a],
                normals[b],
                normals[c],
            )
            .unwrap_or(0.0)
        })
        .collect();
    let degenerate_faces = mesh
        .faces
        .iter()
        .filter(|&&[a, b, c]| {
            let (pa, pb, pc) = (mesh.vertices[a], mesh.vertices[b], mesh.vertices[c]);
            triangle_area(pa, pb, pc) <= degenerate_area_eps(pa, pb, pc)
        })
        .count();
    Ok(CurvatureField {
        per_triangle,
        per_vertex_density: None,
        degenerate_faces,
    })
}

/// `κ_T` of a single triangle from its corner positions and normals, or
/// `None` when the triangle is degenerate.
pub fn triangle_total_curvature(
    pa: Vec3,
    pb: Vec3,
    pc: Vec3,
    na: Vec3,
    nb: Vec3,
    nc: Vec3,
) -> Option<f64> {
    let st = per_triangle_stiffness(pa, pb, pc).ok()?;
    // sum of the per-coordinate Dirichlet energies of the Gauss map
    let mut total = 0.0;
    for coord in 0..3 {
        total += st.dirichlet_energy([na[coord], nb[coord], nc[coord]]);
    }
    Some(total)
}

/// Pointwise curvature density per vertex: ring integral over ring area,
/// `density(v) = Σ_{T∋v} κ_T / Σ_{T∋v} area(T)`. Vertices with no incident
/// faces (or zero ring area) get 0.
pub fn per_vertex_curvature_density(mesh: &TriangleMesh, field: &CurvatureField) -> Vec<f64> {
    let mut ring_integral = vec![0.0; mesh.num_vertices()];
    let mut ring_area = vec![0.0; mesh.num_vertices()];
    for (fi, &[a, b, c]) in mesh.faces.iter().enumerate() {
        let area = mesh.face_area(fi);
        let kappa = field.per_triangle[fi];
        for v in [a, b, c] {
            ring_integral[v] += kappa;
            ring_area[v] += area;
        }
    }
    ring_integral
        .iter()
        .zip(&ring_area)
        .map(|(&k, &a)| if a > 0.0 { k / a } else { 0.0 })
        .collect()
}
