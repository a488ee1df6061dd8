//! Evaluation metrics: RMSE between scalar fields and sampled (Metro-style)
//! Hausdorff distances between meshes.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mesh::TriangleMesh;
use crate::sampling::sample_points_on_mesh;
use crate::Vec3;

/// Root-mean-square error between two equally long value lists.
pub fn rmse(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch {
            what: "rmse inputs",
            expected: a.len(),
            actual: b.len(),
        });
    }
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    let sq_sum: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    Ok((sq_sum / a.len() as f64).sqrt())
}

/// Exact Euclidean distance from `p` to the closed triangle `(a, b, c)`,
/// handling the interior, edge, and vertex regions.
pub fn point_to_triangle_distance(p: Vec3, a: Vec3, b: Vec3, c: Vec3) -> f64 {
    closest_point_on_triangle(p, a, b, c).metric_distance(&p)
}

/// Closest point on the closed triangle `(a, b, c)` to `p`.
pub fn closest_point_on_triangle(p: Vec3, a: Vec3, b: Vec3, c: Vec3) -> Vec3 {
    let ab = b - a;
    let ac = c - a;
    let ap = p - a;

    let d1 = ab.dot(&ap);
    let d2 = ac.dot(&ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return a;
    }

    let bp = p - b;
    let d3 = ab.dot(&bp);
    let d4 = ac.dot(&bp);
    if d3 >= 0.0 && d4 <= d3 {
        return b;
    }

    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        let v = d1 / (d1 - d3);
        return a + ab * v;
    }

    let cp = p - c;
    let d5 = ab.dot(&cp);
    let d6 = ac.dot(&cp);
    if d6 >= 0.0 && d5 <= d6 {
        return c;
    }

    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        let w = d2 / (d2 - d6);
        return a + ac * w;
    }

    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        let w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return b + (c - b) * w;
    }

    let denom = 1.0 / (va + vb + vc);
    let v = vb * denom;
    let w = vc * denom;
    a + ab * v + ac * w
}

/// Axis-aligned bounding-box tree over a mesh's triangles, for nearest-
/// triangle distance queries.
pub struct TriangleBvh {
    triangles: Vec<[Vec3; 3]>,
    nodes: Vec<BvhNode>,
}

struct BvhNode {
    lo: Vec3,
    hi: Vec3,
    /// Leaf: range into `leaf_items`; internal: child node indices.
    kind: NodeKind,
}

enum NodeKind {
    Leaf { start: usize, count: usize },
    Internal { left: usize, right: usize },
}

const BVH_LEAF_SIZE: usize = 8;

impl TriangleBvh {
    pub fn build(mesh: &TriangleMesh) -> Result<Self> {
        if mesh.is_empty() {
            return Err(Error::EmptyMesh);
        }
        let mut triangles: Vec<[Vec3; 3]> = mesh.faces.iter().map(|_| Default::default()).collect();
        for (i, &[a, b, c]) in mesh.faces.iter().enumerate() {
            triangles[i] = [mesh.vertices[a], mesh.vertices[b], mesh.vertices[c]];
        }
        let mut order: Vec<usize> = (0..triangles.len()).collect();
        let mut nodes = Vec::new();
        Self::build_node(&triangles, &mut order, 0, triangles.len(), &mut nodes);
        // reorder triangles into leaf order so leaves index contiguously
        let reordered: Vec<[Vec3; 3]> = order.iter().map(|&i| triangles[i]).collect();
        Ok(Self {
            triangles: reordered,
            nodes,
        })
    }

    fn build_node(
        triangles: &[[Vec3; 3]],
        order: &mut [usize],
        start: usize,
        count: usize,
        nodes: &mut Vec<BvhNode>,
    ) -> usize {
        let slice = &order[start..start + count];
        let mut lo = Vec3::repeat(f64::INFINITY);
        let mut hi = Vec3::repeat(f64::NEG_INFINITY);
        for &t in slice {
            for v in &triangles[t] {
                lo = lo.inf(v);
                hi = hi.sup(v);
            }
        }
        let node_index = nodes.len();
        nodes.push(BvhNode {
            lo,
            hi,
            kind: NodeKind::Leaf { start, count },
        });
        if count > BVH_LEAF_SIZE {
            // split on the longest axis at the median centroid
            let extent = hi - lo;
            let axis = if extent.x >= extent.y && extent.x >= extent.z {
                0
            } else if extent.y >= extent.z {
                1
            } else {
                2
            };
            let centroid = |t: usize| {
                (triangles[t][0][axis] + triangles[t][1][axis] + triangles[t][2][axis]) / 3.0
            };
            let mid = count / 2;
            order[start..start + count].select_nth_unstable_by(mid, |&a, &b| {
                centroid(a).partial_cmp(&centroid(b)).unwrap()
            });
            let left = Self::build_node(triangles, order, start, mid, nodes);
            let right = Self::build_node(triangles, order, start + mid, count - mid, nodes);
            nodes[node_index].kind = NodeKind::Internal { left, right };
        }
        node_index
    }

    fn box_distance_sq(&self, node: &BvhNode, p: Vec3) -> f64 {
        let mut d2 = 0.0;
        for axis in 0..3 {
            let v = p[axis];
            let d = if v < node.lo[axis] {
                node.lo[axis] - v
            } else if v > node.hi[axis] {
                v - node.hi[axis]
            } else {
                0.0
            };
            d2 += d * d;
        }
        d2
    }

    /// Distance from `p` to the closest triangle of the mesh.
    pub fn distance(&self, p: Vec3) -> f64 {
        let mut best = f64::INFINITY;
        self.distance_rec(0, p, &mut best);
        best.sqrt()
    }

    fn distance_rec(&self, node: usize, p: Vec3, best_sq: &mut f64) {
        let n = &self.nodes[node];
        if self.box_distance_sq(n, p) >= *best_sq {
            return;
        }
        match n.kind {
            NodeKind::Leaf { start, count } => {
                for t in &self.triangles[start..start + count] {
                    let q = closest_point_on_triangle(p, t[0], t[1], t[2]);
                    let d2 = (q - p).norm_squared();
                    if d2 < *best_sq {
                        *best_sq = d2;
                    }
                }
            }
            NodeKind::Internal { left, right } => {
                // visit the nearer child first for tighter pruning
                let dl = self.box_distance_sq(&self.nodes[left], p);
                let dr = self.box_distance_sq(&self.nodes[right], p);
                if dl <= dr {
                    self.distance_rec(left, p, best_sq);
                    self.distance_rec(right, p, best_sq);
                } else {
                    self.distance_rec(right, p, best_sq);
                    self.distance_rec(left, p, best_sq);
                }
            }
        }
    }
}

/// Sampled symmetric Hausdorff distances between two meshes.
#[derive(Debug, Clone, Copy)]
pub struct HausdorffResult {
    /// RMS of squared point-to-surface distances pooled over both directions.
    pub rms: f64,
    /// Maximum over both directions.
    pub max: f64,
    pub sample_count: usize,
    pub seed: u64,
}

/// Combined evaluation record: curvature RMSE plus Hausdorff distances.
///
/// All values are nonnegative and `hausdorff_max >= hausdorff_rms` by
/// construction (the maximum of a sample set bounds its RMS).
#[derive(Debug, Clone, Copy)]
pub struct EvalReport {
    pub rmse: f64,
    pub hausdorff_rms: f64,
    pub hausdorff_max: f64,
    pub sample_count: usize,
    pub seed: u64,
}

impl EvalReport {
    pub fn new(rmse: f64, hausdorff: HausdorffResult) -> Self {
        Self {
            rmse,
            hausdorff_rms: hausdorff.rms,
            hausdorff_max: hausdorff.max,
            sample_count: hausdorff.sample_count,
            seed: hausdorff.seed,
        }
    }
}

/// Symmetric sampled Hausdorff distance.
///
/// Each mesh is sampled with `samples` area-uniform points (same seed on
/// both sides, so the result is exactly symmetric in its arguments) plus all
/// of its vertices; distances are exact point-to-triangle queries against
/// the other mesh's BVH.
pub fn hausdorff(
    mesh_a: &TriangleMesh,
    mesh_b: &TriangleMesh,
    samples: usize,
    seed: u64,
) -> Result<HausdorffResult> {
    assert!(samples >= 1000, "hausdorff needs at least 1000 samples");
    if mesh_a.is_empty() || mesh_b.is_empty() {
        return Err(Error::EmptyMesh);
    }
    let bvh_a = TriangleBvh::build(mesh_a)?;
    let bvh_b = TriangleBvh::build(mesh_b)?;

    let one_sided = |from: &TriangleMesh, to: &TriangleBvh| -> (f64, f64, usize) {
        let mut points = sample_points_on_mesh(from, samples, seed).points;
        points.extend_from_slice(&from.vertices);
        // per-point distances in order, then a sequential fold: the result is
        // bitwise independent of the rayon thread count
        let distances: Vec<f64> = points.par_iter().map(|&p| to.distance(p)).collect();
        let sq_sum: f64 = distances.iter().map(|d| d * d).sum();
        let max = distances.iter().cloned().fold(0.0, f64::max);
        (sq_sum, max, points.len())
    };

    let (sq_ab, max_ab, n_ab) = one_sided(mesh_a, &bvh_b);
    let (sq_ba, max_ba, n_ba) = one_sided(mesh_b, &bvh_a);
    Ok(HausdorffResult {
        rms: ((sq_ab + sq_ba) / (n_ab + n_ba) as f64).sqrt(),
        max: max_ab.max(max_ba),
        sample_count: samples,
        seed,
    })
}
