//! 2D Delaunay triangulation by Bowyer–Watson insertion.
//!
//! Geometric predicates are evaluated on coordinates normalized by the point
//! spread, with a tolerance of 1e-9 on the in-circumcircle determinant;
//! exact arithmetic is out of scope at the neighborhood sizes used here.

use crate::error::{Error, Result};

/// Tolerance on the normalized in-circumcircle determinant.
const INCIRCLE_EPS: f64 = 1e-9;
/// Points closer than this are deduplicated before triangulation.
const DEDUP_EPS: f64 = 1e-12;

/// A triangulation of a planar neighborhood.
///
/// `triangles` index into `planar_points` (the deduplicated list);
/// `kept[j]` maps deduplicated index `j` back to the input list, and
/// `center_index` is the deduplicated index of the first input point, which
/// the point-cloud pipeline reserves for the query point itself.
#[derive(Debug, Clone)]
pub struct LocalTriangulation {
    pub planar_points: Vec<[f64; 2]>,
    pub triangles: Vec<[usize; 3]>,
    pub center_index: usize,
    pub kept: Vec<usize>,
}

/// Bowyer–Watson Delaunay triangulation of `points`.
///
/// Duplicates (within 1e-12) are removed first, keeping the earliest
/// occurrence. Fails with [`Error::TooFewPoints`] below three distinct
/// points and [`Error::CollinearInput`] when all points are collinear.
pub fn delaunay_2d(points: &[[f64; 2]]) -> Result<LocalTriangulation> {
    // first-wins dedup; input sizes are small (a kNN neighborhood)
    let mut kept: Vec<usize> = Vec::with_capacity(points.len());
    let mut unique: Vec<[f64; 2]> = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        let dup = unique
            .iter()
            .any(|q| (p[0] - q[0]).hypot(p[1] - q[1]) <= DEDUP_EPS);
        if !dup {
            unique.push(*p);
            kept.push(i);
        }
    }
    let n = unique.len();
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }

    // normalize into a centered unit square for predicate stability
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in &unique {
        for a in 0..2 {
            lo[a] = lo[a].min(p[a]);
            hi[a] = hi[a].max(p[a]);
        }
    }
    let spread = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(f64::MIN_POSITIVE);
    let center = [(lo[0] + hi[0]) / 2.0, (lo[1] + hi[1]) / 2.0];
    let norm: Vec<[f64; 2]> = unique
        .iter()
        .map(|p| [(p[0] - center[0]) / spread, (p[1] - center[1]) / spread])
        .collect();

    if is_collinear(&norm) {
        return Err(Error::CollinearInput);
    }

    let triangles = bowyer_watson(&norm);
    if triangles.is_empty() {
        return Err(Error::CollinearInput);
    }
    Ok(LocalTriangulation {
        planar_points: unique,
        triangles,
        center_index: 0,
        kept,
    })
}

/// The triangles of `tri` incident on its center point.
///
/// Fails with [`Error::IsolatedCenter`] when the center appears in no
/// triangle.
pub fn one_ring(tri: &LocalTriangulation) -> Result<Vec<[usize; 3]>> {
    let ring: Vec<[usize; 3]> = tri
        .triangles
        .iter()
        .copied()
        .filter(|t| t.contains(&tri.center_index))
        .collect();
    if ring.is_empty() {
        return Err(Error::IsolatedCenter);
    }
    Ok(ring)
}

fn is_collinear(points: &[[f64; 2]]) -> bool {
    // anchor on the two mutually farthest of (first, farthest-from-first)
    let p0 = points[0];
    let p1 = *points
        .iter()
        .max_by(|a, b| dist2(**a, p0).partial_cmp(&dist2(**b, p0)).unwrap())
        .unwrap();
    let d = [p1[0] - p0[0], p1[1] - p0[1]];
    let len = (d[0] * d[0] + d[1] * d[1]).sqrt();
    if len == 0.0 {
        return true;
    }
    points.iter().all(|p| {
        let cross = (p[0] - p0[0]) * d[1] - (p[1] - p0[1]) * d[0];
        (cross / len).abs() <= INCIRCLE_EPS
    })
}

fn dist2(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1])
}

fn orient2d(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Positive when `d` lies inside the circumcircle of the CCW triangle (a,b,c).
fn incircle(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> f64 {
    let (adx, ady) = (a[0] - d[0], a[1] - d[1]);
    let (bdx, bdy) = (b[0] - d[0], b[1] - d[1]);
    let (cdx, cdy) = (c[0] - d[0], c[1] - d[1]);
    let ad = adx * adx + ady * ady;
    let bd = bdx * bdx + bdy * bdy;
    let cd = cdx * cdx + cdy * cdy;
    adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx)
}

fn bowyer_watson(points: &[[f64; 2]]) -> Vec<[usize; 3]> {
    let n = points.len();
    // super-triangle well outside the normalized unit square
    let big = 64.0;
    let mut all: Vec<[f64; 2]> = points.to_vec();
    all.push([-big, -big]);
    all.push([big, -big]);
    all.push([0.0, big]);
    let (s0, s1, s2) = (n, n + 1, n + 2);
    let mut triangles: Vec<[usize; 3]> = vec![[s0, s1, s2]];

    for (pi, &p) in points.iter().enumerate() {
        // cavity: triangles whose circumcircle contains p
        let mut bad = Vec::new();
        for (ti, t) in triangles.iter().enumerate() {
            let (a, b, c) = (all[t[0]], all[t[1]], all[t[2]]);
            // incircle assumes CCW orientation
            let det = if orient2d(a, b, c) >= 0.0 {
                incircle(a, b, c, p)
            } else {
                incircle(a, c, b, p)
            };
            if det > -INCIRCLE_EPS {
                bad.push(ti);
            }
        }
        // boundary of the cavity: edges used by exactly one bad triangle
        let mut boundary: Vec<(usize, usize)> = Vec::new();
        for &ti in &bad {
            let t = triangles[ti];
            for (u, v) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                if let Some(pos) = boundary.iter().position(|&(a, b)| (b, a) == (u, v)) {
                    boundary.swap_remove(pos);
                } else {
                    boundary.push((u, v));
                }
            }
        }
        for i in bad.into_iter().rev() {
            triangles.swap_remove(i);
        }
        for (u, v) in boundary {
            triangles.push([u, v, pi]);
        }
    }

    triangles.retain(|t| t.iter().all(|&v| v < n));
    // normalize orientation to CCW
    for t in &mut triangles {
        if orient2d(points[t[0]], points[t[1]], points[t[2]]) < 0.0 {
            t.swap(1, 2);
        }
    }
    triangles
}

/// Brute-force empty-circumcircle validation used as the test oracle:
/// no point may lie inside any triangle's circumcircle beyond the predicate
/// tolerance (normalized by point spread).
pub fn validate_empty_circumcircle(tri: &LocalTriangulation) -> bool {
    let pts = &tri.planar_points;
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in pts {
        for a in 0..2 {
            lo[a] = lo[a].min(p[a]);
            hi[a] = hi[a].max(p[a]);
        }
    }
    let spread = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(f64::MIN_POSITIVE);
    for t in &tri.triangles {
        let (a, b, c) = (pts[t[0]], pts[t[1]], pts[t[2]]);
        // circumcenter
        let d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
        if d.abs() < f64::MIN_POSITIVE {
            return false;
        }
        let a2 = a[0] * a[0] + a[1] * a[1];
        let b2 = b[0] * b[0] + b[1] * b[1];
        let c2 = c[0] * c[0] + c[1] * c[1];
        let ux = (a2 * (b[1] - c[1]) + b2 * (c[1] - a[1]) + c2 * (a[1] - b[1])) / d;
        let uy = (a2 * (c[0] - b[0]) + b2 * (a[0] - c[0]) + c2 * (b[0] - a[0])) / d;
        let r = dist2(a, [ux, uy]).sqrt();
        for (pi, p) in pts.iter().enumerate() {
            if t.contains(&pi) {
                continue;
            }
            let dist = dist2(*p, [ux, uy]).sqrt();
            if dist < r - 1e-9 * spread {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn three_points_one_triangle() {
        let tri = delaunay_2d(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert_eq!(tri.triangles.len(), 1);
        assert!(validate_empty_circumcircle(&tri));
    }

    #[test]
    fn unit_square_two_triangles() {
        let tri = delaunay_2d(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        assert_eq!(tri.triangles.len(), 2);
        assert!(validate_empty_circumcircle(&tri));
    }

    #[test]
    fn collinear_rejected() {
        let pts: Vec<[f64; 2]> = (0..5).map(|i| [i as f64, 2.0 * i as f64]).collect();
        assert!(matches!(delaunay_2d(&pts), Err(Error::CollinearInput)));
    }

    #[test]
    fn too_few_points_rejected() {
        assert!(matches!(
            delaunay_2d(&[[0.0, 0.0], [1.0, 0.0]]),
            Err(Error::TooFewPoints { .. })
        ));
        // duplicates collapse below the minimum
        assert!(matches!(
            delaunay_2d(&[[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]),
            Err(Error::TooFewPoints { .. })
        ));
    }

    #[test]
    fn duplicates_keep_first_occurrence() {
        let tri = delaunay_2d(&[[0.0, 0.0], [0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert_eq!(tri.kept, vec![0, 2, 3]);
        assert_eq!(tri.center_index, 0);
    }

    #[test]
    fn random_sets_pass_circumcircle_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for case in 0..60 {
            let n = rng.random_range(5..50);
            let pts: Vec<[f64; 2]> = (0..n)
                .map(|_| [rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)])
                .collect();
            let tri = delaunay_2d(&pts).unwrap();
            assert!(validate_empty_circumcircle(&tri), "case {case} failed");
            // every surviving point is used in some triangle
            let mut used = vec![false; tri.planar_points.len()];
            for t in &tri.triangles {
                for &v in t {
                    used[v] = true;
                }
            }
            assert!(used.iter().all(|&u| u), "case {case}: unused point");
        }
    }

    #[test]
    fn exactly_cocircular_grid_points() {
        // every quad of a regular grid is cocircular: the tolerance
        // predicate must still produce a valid triangulation
        let mut pts = Vec::new();
        for i in 0..7 {
            for j in 0..7 {
                pts.push([i as f64, j as f64]);
            }
        }
        let tri = delaunay_2d(&pts).unwrap();
        // a triangulated convex n-gon point set: 2·49 - 2 - hull(24) triangles
        assert_eq!(tri.triangles.len(), 2 * 49 - 2 - 24);
        assert!(validate_empty_circumcircle(&tri));
    }

    #[test]
    fn star_one_ring_contains_center() {
        // center first, then a ring of 5 points around it
        let mut pts = vec![[0.0, 0.0]];
        for k in 0..5 {
            let ang = std::f64::consts::TAU * k as f64 / 5.0;
            pts.push([ang.cos(), ang.sin()]);
        }
        let tri = delaunay_2d(&pts).unwrap();
        let ring = one_ring(&tri).unwrap();
        assert!(
            ring.len() == 4 || ring.len() == 5,
            "ring size {}",
            ring.len()
        );
        for t in &ring {
            assert!(t.contains(&0));
        }
        // ring vertices come from the input neighborhood
        for t in &ring {
            for &v in t {
                assert!(v < tri.planar_points.len());
            }
        }
    }

    #[test]
    fn hull_center_gets_partial_fan() {
        // center on the convex hull: a fan covering < 2π
        let pts = vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [-1.0, 1.0], [-1.0, 0.5]];
        let tri = delaunay_2d(&pts).unwrap();
        let ring = one_ring(&tri).unwrap();
        assert!(!ring.is_empty());
        let mut angle = 0.0;
        for t in &ring {
            let others: Vec<usize> = t.iter().copied().filter(|&v| v != 0).collect();
            let a = tri.planar_points[others[0]];
            let b = tri.planar_points[others[1]];
            let va = [a[0], a[1]];
            let vb = [b[0], b[1]];
            let dot = va[0] * vb[0] + va[1] * vb[1];
            let cross = va[0] * vb[1] - va[1] * vb[0];
            angle += cross.abs().atan2(dot).abs();
        }
        assert!(angle < std::f64::consts::TAU - 0.5, "fan angle {angle}");
    }
}
