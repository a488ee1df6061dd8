//! Core surface types: indexed triangle meshes and oriented point clouds.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::Vec3;

/// Unit-length tolerance for stored normals.
pub const UNIT_NORMAL_EPS: f64 = 1e-9;

/// An indexed triangle mesh with optional per-vertex normals and UV parameters.
///
/// Faces are counter-clockwise when viewed from outside, so face normals
/// computed by the right-hand rule point outward on a closed surface.
#[derive(Debug, Clone, Default)]
pub struct TriangleMesh {
    pub vertices: Vec<Vec3>,
    pub faces: Vec<[usize; 3]>,
    /// Per-vertex unit normals, if known.
    pub vertex_normals: Option<Vec<Vec3>>,
    /// Per-vertex (u, v) surface parameters, if the mesh came from a parameterization.
    pub vertex_uv: Option<Vec<(f64, f64)>>,
}

impl TriangleMesh {
    pub fn new(vertices: Vec<Vec3>, faces: Vec<[usize; 3]>) -> Self {
        Self {
            vertices,
            faces,
            vertex_normals: None,
            vertex_uv: None,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() || self.faces.is_empty()
    }

    /// Positions of a face's three corners.
    pub fn face_points(&self, f: usize) -> [Vec3; 3] {
        let [a, b, c] = self.faces[f];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    /// Area of face `f`.
    pub fn face_area(&self, f: usize) -> f64 {
        let [a, b, c] = self.face_points(f);
        crate::stiffness::triangle_area(a, b, c)
    }

    /// Sum of all face areas.
    pub fn total_area(&self) -> f64 {
        (0..self.faces.len()).map(|f| self.face_area(f)).sum()
    }

    /// Axis-aligned bounding box, or `None` for an empty mesh.
    pub fn bounds(&self) -> Option<(Vec3, Vec3)> {
        bounds_of(&self.vertices)
    }

    /// Length of the bounding-box diagonal (0 for an empty mesh).
    pub fn bbox_diagonal(&self) -> f64 {
        self.bounds().map_or(0.0, |(lo, hi)| (hi - lo).norm())
    }

    /// Signed volume via the divergence theorem; positive for a closed,
    /// outward-oriented surface.
    pub fn signed_volume(&self) -> f64 {
        self.faces
            .iter()
            .map(|&[a, b, c]| {
                let (a, b, c) = (self.vertices[a], self.vertices[b], self.vertices[c]);
                a.dot(&b.cross(&c)) / 6.0
            })
            .sum()
    }

    /// Euler characteristic V - E + F, counting each undirected edge once.
    pub fn euler_characteristic(&self) -> i64 {
        let mut edges = std::collections::HashSet::new();
        for &[a, b, c] in &self.faces {
            for (i, j) in [(a, b), (b, c), (c, a)] {
                edges.insert((i.min(j), i.max(j)));
            }
        }
        self.vertices.len() as i64 - edges.len() as i64 + self.faces.len() as i64
    }

    /// Check the structural invariants: in-range face indices, no repeated
    /// vertex within a face, attribute lengths, unit normals, finite coords.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        for (vi, v) in self.vertices.iter().enumerate() {
            if !(v.x.is_finite() && v.y.is_finite() && v.z.is_finite()) {
                return Err(Error::InvalidMesh(format!("vertex {vi} is not finite")));
            }
        }
        for (fi, &[a, b, c]) in self.faces.iter().enumerate() {
            if a >= n || b >= n || c >= n {
                return Err(Error::InvalidMesh(format!(
                    "face {fi} references vertex out of range (n={n})"
                )));
            }
            if a == b || b == c || a == c {
                return Err(Error::InvalidMesh(format!("face {fi} repeats a vertex")));
            }
        }
        if let Some(normals) = &self.vertex_normals {
            if normals.len() != n {
                return Err(Error::SizeMismatch {
                    what: "vertex_normals",
                    expected: n,
                    actual: normals.len(),
                });
            }
            for (i, nv) in normals.iter().enumerate() {
                if (nv.norm() - 1.0).abs() > UNIT_NORMAL_EPS {
                    return Err(Error::InvalidMesh(format!(
                        "vertex normal {i} is not unit length (|n|={})",
                        nv.norm()
                    )));
                }
            }
        }
        if let Some(uv) = &self.vertex_uv {
            if uv.len() != n {
                return Err(Error::SizeMismatch {
                    what: "vertex_uv",
                    expected: n,
                    actual: uv.len(),
                });
            }
        }
        Ok(())
    }

    /// Classify edge manifoldness: for every undirected edge, how many faces
    /// share it and whether the two incident directed edges run in opposite
    /// directions (consistent winding).
    pub fn edge_report(&self) -> EdgeReport {
        // (min, max) -> (total count, count in (min -> max) direction)
        let mut edges: HashMap<(usize, usize), (u32, u32)> = HashMap::new();
        for &[a, b, c] in &self.faces {
            for (i, j) in [(a, b), (b, c), (c, a)] {
                let key = (i.min(j), i.max(j));
                let e = edges.entry(key).or_insert((0, 0));
                e.0 += 1;
                if i < j {
                    e.1 += 1;
                }
            }
        }
        let mut report = EdgeReport::default();
        for (_, (count, forward)) in edges {
            match count {
                1 => report.boundary_edges += 1,
                2 => {
                    if forward == 1 {
                        report.interior_edges += 1;
                    } else {
                        // both faces traverse the edge in the same direction
                        report.inconsistent_edges += 1;
                    }
                }
                _ => report.nonmanifold_edges += 1,
            }
        }
        report
    }

    /// True when every edge is shared by exactly two consistently wound faces.
    pub fn is_closed_manifold(&self) -> bool {
        let r = self.edge_report();
        !self.is_empty()
            && r.boundary_edges == 0
            && r.nonmanifold_edges == 0
            && r.inconsistent_edges == 0
    }

    /// Manifold with consistent winding, allowing an open boundary.
    pub fn is_manifold(&self) -> bool {
        let r = self.edge_report();
        !self.is_empty() && r.nonmanifold_edges == 0 && r.inconsistent_edges == 0
    }

    /// Faces incident to each vertex.
    pub fn vertex_faces(&self) -> Vec<Vec<usize>> {
        let mut incident = vec![Vec::new(); self.vertices.len()];
        for (fi, &[a, b, c]) in self.faces.iter().enumerate() {
            incident[a].push(fi);
            incident[b].push(fi);
            incident[c].push(fi);
        }
        incident
    }
}

/// Edge-sharing statistics from [`TriangleMesh::edge_report`].
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct EdgeReport {
    pub interior_edges: usize,
    pub boundary_edges: usize,
    pub nonmanifold_edges: usize,
    /// Edges whose two incident faces traverse them in the same direction.
    pub inconsistent_edges: usize,
}

/// A point cloud with optional oriented unit normals.
#[derive(Debug, Clone, Default)]
pub struct PointCloud {
    pub points: Vec<Vec3>,
    pub normals: Option<Vec<Vec3>>,
}

impl PointCloud {
    pub fn new(points: Vec<Vec3>) -> Self {
        Self {
            points,
            normals: None,
        }
    }

    pub fn with_normals(points: Vec<Vec3>, normals: Vec<Vec3>) -> Self {
        Self {
            points,
            normals: Some(normals),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn centroid(&self) -> Vec3 {
        if self.points.is_empty() {
            return Vec3::zeros();
        }
        self.points.iter().sum::<Vec3>() / self.points.len() as f64
    }

    pub fn bounds(&self) -> Option<(Vec3, Vec3)> {
        bounds_of(&self.points)
    }

    /// Check attribute lengths and normal unit length.
    pub fn validate(&self) -> Result<()> {
        if let Some(normals) = &self.normals {
            if normals.len() != self.points.len() {
                return Err(Error::SizeMismatch {
                    what: "cloud normals",
                    expected: self.points.len(),
                    actual: normals.len(),
                });
            }
            for (i, nv) in normals.iter().enumerate() {
                if (nv.norm() - 1.0).abs() > UNIT_NORMAL_EPS {
                    return Err(Error::InvalidMesh(format!(
                        "cloud normal {i} is not unit length (|n|={})",
                        nv.norm()
                    )));
                }
            }
        }
        Ok(())
    }
}

fn bounds_of(points: &[Vec3]) -> Option<(Vec3, Vec3)> {
    let first = *points.first()?;
    let mut lo = first;
    let mut hi = first;
    for p in &points[1..] {
        lo = lo.inf(p);
        hi = hi.sup(p);
    }
    Some((lo, hi))
}
