//! Total curvature on oriented point clouds.
//!
//! Per point: query the k nearest neighbors, project them onto the tangent
//! plane at the point, triangulate the projection with 2D Delaunay, take the
//! one-ring of triangles around the point, lift those triangles back to the
//! original 3D positions, and average their Gauss-map Dirichlet energies
//! (ring integral over ring area). Normal estimation (PCA over the k-NN
//! covariance) and orientation propagation (minimum spanning tree) are
//! provided for clouds without normals.

mod delaunay;
mod knn;

pub use delaunay::{delaunay_2d, one_ring, validate_empty_circumcircle, LocalTriangulation};
pub use knn::{brute_force_knn, KnnIndex, Neighbor};

use rayon::prelude::*;

use crate::curvature::triangle_total_curvature;
use crate::error::{Error, Result};
use crate::mesh::PointCloud;
use crate::shapes::least_aligned_axis;
use crate::stiffness::triangle_area;
use crate::Vec3;

/// Build the exact kNN index over a cloud's points.
pub fn build_knn_index(points: &[Vec3]) -> Result<KnnIndex> {
    KnnIndex::build(points)
}

/// An orthonormal right-handed tangent frame `{e1, e2, normal}`.
#[derive(Debug, Clone, Copy)]
pub struct TangentFrame {
    pub origin: Vec3,
    pub normal: Vec3,
    pub e1: Vec3,
    pub e2: Vec3,
}

impl TangentFrame {
    /// Project a point into the frame's (e1, e2) plane coordinates.
    pub fn project(&self, p: Vec3) -> [f64; 2] {
        let d = p - self.origin;
        [d.dot(&self.e1), d.dot(&self.e2)]
    }
}

/// Deterministic tangent frame at `origin`: `e1` is built from the global
/// axis least aligned with `normal`, and `e2 = normal × e1` closes a
/// right-handed frame.
pub fn tangent_frame(origin: Vec3, normal: Vec3) -> TangentFrame {
    debug_assert!((normal.norm() - 1.0).abs() < 1e-9);
    let axis = least_aligned_axis(normal);
    let e1 = (axis - normal * axis.dot(&normal)).normalize();
    let e2 = normal.cross(&e1);
    TangentFrame {
        origin,
        normal,
        e1,
        e2,
    }
}

/// PCA normal estimates plus the points flagged as degenerate.
#[derive(Debug, Clone)]
pub struct PcaNormals {
    /// One unit normal per point; sign is arbitrary.
    pub normals: Vec<Vec3>,
    /// Points whose two smallest covariance eigenvalues coincide within
    /// 1e-12 (normal direction ill-determined; still returned).
    pub degenerate: Vec<usize>,
}

/// Unoriented normals: at each point, the eigenvector of the smallest
/// eigenvalue of the covariance matrix of its k nearest neighbors (the
/// neighbor set includes the point itself).
pub fn estimate_normals_pca(cloud: &PointCloud, k: usize) -> Result<PcaNormals> {
    if k < 3 {
        return Err(Error::TooFewNeighbors { needed: 3, got: k });
    }
    if cloud.len() < k {
        return Err(Error::TooFewNeighbors {
            needed: k,
            got: cloud.len(),
        });
    }
    let index = KnnIndex::build(&cloud.points)?;
    let per_point: Vec<(Vec3, bool)> = cloud
        .points
        .par_iter()
        .map(|&p| {
            let hits = index.query(p, k);
            let mut mean = Vec3::zeros();
            for h in &hits {
                mean += cloud.points[h.index];
            }
            mean /= hits.len() as f64;
            let mut cov = nalgebra::Matrix3::<f64>::zeros();
            for h in &hits {
                let d = cloud.points[h.index] - mean;
                cov += d * d.transpose();
            }
            cov /= hits.len() as f64;
            let eig = nalgebra::SymmetricEigen::new(cov);
            // sort eigenpairs ascending
            let mut order = [0usize, 1, 2];
            order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
            let normal = eig.eigenvectors.column(order[0]).normalize();
            let degenerate = (eig.eigenvalues[order[0]] - eig.eigenvalues[order[1]]).abs() <= 1e-12;
            (normal, degenerate)
        })
        .collect();
    let mut normals = Vec::with_capacity(per_point.len());
    let mut degenerate = Vec::new();
    for (i, (n, d)) in per_point.into_iter().enumerate() {
        normals.push(n);
        if d {
            degenerate.push(i);
        }
    }
    Ok(PcaNormals {
        normals,
        degenerate,
    })
}

/// Result of MST orientation propagation.
#[derive(Debug, Clone)]
pub struct OrientedNormals {
    pub normals: Vec<Vec3>,
    /// Connected components of the symmetric kNN graph; more than one means
    /// each component was oriented independently.
    pub component_count: usize,
}

/// Propagate a consistent normal orientation along a minimum spanning tree
/// of the symmetric kNN graph (edge weight `1 - |n_i · n_j|`).
///
/// Each component is rooted at its highest-z point; the root normal is
/// flipped, if needed, to satisfy `n · (p - centroid) ≥ 0`, and a traversal
/// flips any child whose normal opposes its parent's.
pub fn orient_normals_mst(
    cloud: &PointCloud,
    normals: &[Vec3],
    k: usize,
) -> Result<OrientedNormals> {
    let n = cloud.len();
    if normals.len() != n {
        return Err(Error::SizeMismatch {
            what: "cloud normals",
            expected: n,
            actual: normals.len(),
        });
    }
    if n == 0 {
        return Err(Error::EmptyCloud);
    }
    let mut oriented = normals.to_vec();
    if n == 1 {
        // centroid rule with the centroid at the point itself: unchanged
        return Ok(OrientedNormals {
            normals: oriented,
            component_count: 1,
        });
    }

    let index = KnnIndex::build(&cloud.points)?;
    let k_eff = k.min(n - 1);
    let mut edges: Vec<(f64, u32, u32)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for i in 0..n {
        for hit in index.query(cloud.points[i], k_eff + 1) {
            let j = hit.index;
            if j == i {
                continue;
            }
            let key = ((i.min(j)) as u64) << 32 | (i.max(j)) as u64;
            if seen.insert(key) {
                let w = 1.0 - normals[i].dot(&normals[j]).abs();
                edges.push((w, i.min(j) as u32, i.max(j) as u32));
            }
        }
    }
    edges.sort_by(|a, b| a.partial_cmp(b).unwrap());

    // Kruskal forest
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &(_, i, j) in &edges {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri as usize] = rj;
            adjacency[i as usize].push(j);
            adjacency[j as usize].push(i);
        }
    }

    // group components
    let mut component: Vec<Option<usize>> = vec![None; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let root = find(&mut parent, i as u32) as usize;
        if component[root].is_none() {
            component[root] = Some(components.len());
            components.push(Vec::new());
        }
        let c = component[root].unwrap();
        components[c].push(i);
    }

    for members in &components {
        let centroid =
            members.iter().map(|&i| cloud.points[i]).sum::<Vec3>() / members.len() as f64;
        // root: highest z, ties to the lowest index
        let root = *members
            .iter()
            .reduce(|a, b| {
                let (za, zb) = (cloud.points[*a].z, cloud.points[*b].z);
                if zb > za {
                    b
                } else {
                    a
                }
            })
            .unwrap();
        if oriented[root].dot(&(cloud.points[root] - centroid)) < 0.0 {
            oriented[root] = -oriented[root];
        }
        // BFS flip propagation
        let mut visited = vec![false; n];
        visited[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in &adjacency[u] {
                let v = v as usize;
                if !visited[v] {
                    visited[v] = true;
                    if oriented[u].dot(&oriented[v]) < 0.0 {
                        oriented[v] = -oriented[v];
                    }
                    queue.push_back(v);
                }
            }
        }
    }

    Ok(OrientedNormals {
        normals: oriented,
        component_count: components.len(),
    })
}

/// Per-point densities plus the points that fell back to zero.
#[derive(Debug, Clone)]
pub struct CloudCurvature {
    /// Total-curvature density per point (ring integral / ring area).
    pub density: Vec<f64>,
    /// Points whose local triangulation failed (collinear neighborhood,
    /// isolated center, zero ring area); assigned density 0.
    pub failed: Vec<usize>,
}

/// Total-curvature density at every point of an oriented cloud.
///
/// Ring triangles are lifted back to the original 3D positions for both the
/// stiffness matrix and the area; the three lifted corners keep their own
/// oriented normals.
pub fn pointcloud_total_curvature(
    cloud: &PointCloud,
    normals: &[Vec3],
    k: usize,
) -> Result<CloudCurvature> {
    let n = cloud.len();
    if normals.len() != n {
        return Err(Error::SizeMismatch {
            what: "cloud normals",
            expected: n,
            actual: normals.len(),
        });
    }
    if k < 3 {
        return Err(Error::TooFewNeighbors { needed: 3, got: k });
    }
    if n < 4 {
        return Err(Error::TooFewNeighbors { needed: 4, got: n });
    }
    let index = KnnIndex::build(&cloud.points)?;

    let per_point: Vec<Option<f64>> = (0..n)
        .into_par_iter()
        .map(|i| point_density(cloud, normals, &index, i, k))
        .collect();

    let mut density = Vec::with_capacity(n);
    let mut failed = Vec::new();
    for (i, d) in per_point.into_iter().enumerate() {
        match d {
            Some(d) => density.push(d),
            None => {
                density.push(0.0);
                failed.push(i);
            }
        }
    }
    Ok(CloudCurvature { density, failed })
}

fn point_density(
    cloud: &PointCloud,
    normals: &[Vec3],
    index: &KnnIndex,
    i: usize,
    k: usize,
) -> Option<f64> {
    let p = cloud.points[i];
    let frame = tangent_frame(p, normals[i]);
    // the query returns the point itself; keep it first in the local list
    let mut local: Vec<usize> = vec![i];
    for hit in index.query(p, k) {
        if hit.index != i {
            local.push(hit.index);
        }
    }
    let planar: Vec<[f64; 2]> = local
        .iter()
        .map(|&j| frame.project(cloud.points[j]))
        .collect();
    let tri = delaunay_2d(&planar).ok()?;
    let ring = one_ring(&tri).ok()?;

    let mut integral = 0.0;
    let mut ring_area = 0.0;
    for t in ring {
        let [a, b, c] = t.map(|v| local[tri.kept[v]]);
        let (pa, pb, pc) = (cloud.points[a], cloud.points[b], cloud.points[c]);
        if let Some(kappa) =
            triangle_total_curvature(pa, pb, pc, normals[a], normals[b], normals[c])
        {
            integral += kappa;
            ring_area += triangle_area(pa, pb, pc);
        }
    }
    if ring_area > 0.0 {
        Some(integral / ring_area)
    } else {
        None
    }
}
