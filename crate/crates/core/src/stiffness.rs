//! Per-triangle cotangent stiffness matrices and Dirichlet energies.
//!
//! For a piecewise-linear function `u` on a triangle `T`, the Dirichlet
//! energy `∫_T ‖∇u‖²` equals `uᵀ S_T u`, where `S_T` is the 3×3 cotangent
//! stiffness matrix built here. Rows of `S_T` sum to zero (constants carry
//! no energy) and the matrix is positive semidefinite.

use nalgebra::Matrix3;

use crate::error::{Error, Result};
use crate::Vec3;

/// Area threshold factor: triangles with area ≤ 1e-12 · (longest edge)² are
/// treated as degenerate rather than producing unbounded cotangents.
pub const DEGENERATE_AREA_FACTOR: f64 = 1e-12;

/// Symmetric 3×3 cotangent stiffness matrix of a single triangle.
///
/// Row/column `i` corresponds to the triangle's `i`-th vertex in the order
/// the triangle was given.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleStiffness {
    pub s: Matrix3<f64>,
}

impl TriangleStiffness {
    /// Dirichlet energy `uᵀ S u` of per-vertex values `u`.
    pub fn dirichlet_energy(&self, u: [f64; 3]) -> f64 {
        dirichlet_energy(self, u)
    }
}

/// Area of the triangle `(a, b, c)`; zero for degenerate input.
pub fn triangle_area(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    0.5 * (b - a).cross(&(c - a)).norm()
}

/// Degeneracy threshold for a triangle: `1e-12 · (longest edge)²`.
pub fn degenerate_area_eps(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    let longest = (b - a)
        .norm_squared()
        .max((c - b).norm_squared())
        .max((a - c).norm_squared());
    DEGENERATE_AREA_FACTOR * longest
}

fn check_not_degenerate(a: Vec3, b: Vec3, c: Vec3) -> Result<f64> {
    let area = triangle_area(a, b, c);
    if area <= degenerate_area_eps(a, b, c) {
        return Err(Error::DegenerateTriangle);
    }
    Ok(area)
}

/// Cotangent of the angle at `apex` in the triangle `(apex, p, q)`,
/// computed as dot/cross for robustness near 0 and π.
fn cotangent(apex: Vec3, p: Vec3, q: Vec3) -> f64 {
    let u = p - apex;
    let v = q - apex;
    u.dot(&v) / u.cross(&v).norm()
}

/// Interior angles of `(a, b, c)` in radians, in vertex order.
///
/// Fails with [`Error::DegenerateTriangle`] when the area is below the
/// degeneracy threshold.
pub fn corner_angles(a: Vec3, b: Vec3, c: Vec3) -> Result<(f64, f64, f64)> {
    check_not_degenerate(a, b, c)?;
    let angle = |apex: Vec3, p: Vec3, q: Vec3| {
        let u = p - apex;
        let v = q - apex;
        (u.dot(&v) / (u.norm() * v.norm())).clamp(-1.0, 1.0).acos()
    };
    Ok((angle(a, b, c), angle(b, c, a), angle(c, a, b)))
}

/// Cotangent stiffness matrix of the triangle `(a, b, c)`.
///
/// Off-diagonal `s[i][j] = -cot(angle opposite edge ij) / 2`; each diagonal
/// entry is the negated sum of its row's off-diagonals. Obtuse triangles
/// produce negative off-diagonals naturally; no clamping is applied, the
/// per-triangle form stays positive semidefinite regardless.
pub fn per_triangle_stiffness(a: Vec3, b: Vec3, c: Vec3) -> Result<TriangleStiffness> {
    check_not_degenerate(a, b, c)?;
    // angle at a is opposite edge bc, etc.
    let cot_a = cotangent(a, b, c);
    let cot_b = cotangent(b, c, a);
    let cot_c = cotangent(c, a, b);

    let s01 = -0.5 * cot_c;
    let s02 = -0.5 * cot_b;
    let s12 = -0.5 * cot_a;

    let s = Matrix3::new(
        -(s01 + s02),
        s01,
        s02,
        s01,
        -(s01 + s12),
        s12,
        s02,
        s12,
        -(s02 + s12),
    );
    Ok(TriangleStiffness { s })
}

/// Dirichlet energy `uᵀ S u` of per-vertex values `u` under stiffness `s`.
pub fn dirichlet_energy(s: &TriangleStiffness, u: [f64; 3]) -> f64 {
    let v = nalgebra::Vector3::new(u[0], u[1], u[2]);
    (v.transpose() * s.s * v)[(0, 0)]
}

/// Dirichlet energy via the cotangent edge form,
/// `(1/2)[cot α (u_b−u_c)² + cot β (u_a−u_c)² + cot γ (u_a−u_b)²]`.
///
/// Algebraically identical to [`dirichlet_energy`]; kept as an independent
/// route for cross-checking.
pub fn dirichlet_energy_edge_form(a: Vec3, b: Vec3, c: Vec3, u: [f64; 3]) -> Result<f64> {
    check_not_degenerate(a, b, c)?;
    let cot_a = cotangent(a, b, c);
    let cot_b = cotangent(b, c, a);
    let cot_c = cotangent(c, a, b);
    let (ua, ub, uc) = (u[0], u[1], u[2]);
    Ok(0.5
        * (cot_a * (ub - uc) * (ub - uc)
            + cot_b * (ua - uc) * (ua - uc)
            + cot_c * (ua - ub) * (ua - ub)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn right_isoceles() -> (Vec3, Vec3, Vec3) {
        (
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
        )
    }

    #[test]
    fn area_right_triangle() {
        let (a, b, c) = right_isoceles();
        assert_eq!(triangle_area(a, b, c), 0.5);
    }

    #[test]
    fn area_collinear_is_zero() {
        let a = Vec3::new(0.0, 0.0, 0.0);
        let b = Vec3::new(1.0, 0.0, 0.0);
        let c = Vec3::new(2.0, 0.0, 0.0);
        assert_eq!(triangle_area(a, b, c), 0.0);
    }

    #[test]
    fn area_equilateral_side_two() {
        // √3/4 · s² with s = 2
        let s = 2.0;
        let a = Vec3::new(0.0, 0.0, 0.0);
        let b = Vec3::new(s, 0.0, 0.0);
        let c = Vec3::new(s / 2.0, s * 3.0_f64.sqrt() / 2.0, 0.0);
        assert_relative_eq!(triangle_area(a, b, c), 3.0_f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn corner_angles_right_isoceles() {
        let (a, b, c) = right_isoceles();
        let (aa, ab, ac) = corner_angles(a, b, c).unwrap();
        assert_relative_eq!(aa, PI / 2.0, epsilon = 1e-12);
        assert_relative_eq!(ab, PI / 4.0, epsilon = 1e-12);
        assert_relative_eq!(ac, PI / 4.0, epsilon = 1e-12);
    }

    #[test]
    fn corner_angles_equilateral() {
        let a = Vec3::new(0.0, 0.0, 0.0);
        let b = Vec3::new(1.0, 0.0, 0.0);
        let c = Vec3::new(0.5, 3.0_f64.sqrt() / 2.0, 0.0);
        let (aa, ab, ac) = corner_angles(a, b, c).unwrap();
        assert_relative_eq!(aa, PI / 3.0, epsilon = 1e-12);
        assert_relative_eq!(ab, PI / 3.0, epsilon = 1e-12);
        assert_relative_eq!(ac, PI / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn corner_angles_3_4_5() {
        let a = Vec3::new(0.0, 0.0, 0.0);
        let b = Vec3::new(4.0, 0.0, 0.0);
        let c = Vec3::new(0.0, 3.0, 0.0);
        let (aa, ab, ac) = corner_angles(a, b, c).unwrap();
        assert_relative_eq!(aa, PI / 2.0, epsilon = 1e-12);
        assert_relative_eq!(ab, (3.0_f64 / 4.0).atan(), epsilon = 1e-12);
        assert_relative_eq!(ac, (4.0_f64 / 3.0).atan(), epsilon = 1e-12);
    }

    #[test]
    fn corner_angles_degenerate_rejected() {
        let a = Vec3::new(0.0, 0.0, 0.0);
        let b = Vec3::new(1.0, 0.0, 0.0);
        let c = Vec3::new(2.0, 0.0, 0.0);
        assert!(matches!(
            corner_angles(a, b, c),
            Err(Error::DegenerateTriangle)
        ));
    }

    #[test]
    fn stiffness_right_isoceles() {
        let (a, b, c) = right_isoceles();
        let st = per_triangle_stiffness(a, b, c).unwrap();
        let expected = Matrix3::new(1.0, -0.5, -0.5, -0.5, 0.5, 0.0, -0.5, 0.0, 0.5);
        assert_relative_eq!(st.s, expected, epsilon = 1e-12);
    }

    #[test]
    fn stiffness_equilateral() {
        let a = Vec3::new(0.0, 0.0, 0.0);
        let b = Vec3::new(1.0, 0.0, 0.0);
        let c = Vec3::new(0.5, 3.0_f64.sqrt() / 2.0, 0.0);
        let st = per_triangle_stiffness(a, b, c).unwrap();
        let off = -0.5 / 3.0_f64.sqrt();
        let diag = 1.0 / 3.0_f64.sqrt();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { diag } else { off };
                assert_relative_eq!(st.s[(i, j)], expected, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn energy_of_constant_is_zero() {
        let (a, b, c) = right_isoceles();
        let st = per_triangle_stiffness(a, b, c).unwrap();
        assert!(st.dirichlet_energy([3.7, 3.7, 3.7]).abs() < 1e-12);
    }

    #[test]
    fn energy_right_isoceles_hat() {
        let (a, b, c) = right_isoceles();
        let st = per_triangle_stiffness(a, b, c).unwrap();
        assert_relative_eq!(st.dirichlet_energy([0.0, 1.0, 0.0]), 0.5, epsilon = 1e-12);
    }

    fn random_point(rng: &mut impl rand::Rng) -> Vec3 {
        Vec3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        )
    }

    fn random_triangle(rng: &mut impl rand::Rng) -> (Vec3, Vec3, Vec3) {
        loop {
            let (a, b, c) = (random_point(rng), random_point(rng), random_point(rng));
            // reject slivers so cotangent magnitudes stay moderate
            if triangle_area(a, b, c) > 1e-3 {
                return (a, b, c);
            }
        }
    }

    #[test]
    fn random_triangles_row_sum_symmetry_psd() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let (a, b, c) = random_triangle(&mut rng);
            let (aa, ab, ac) = corner_angles(a, b, c).unwrap();
            assert!((aa + ab + ac - PI).abs() < 1e-9, "angle sum off π");
            let st = per_triangle_stiffness(a, b, c).unwrap();
            for i in 0..3 {
                let row_sum: f64 = (0..3).map(|j| st.s[(i, j)]).sum();
                assert!(row_sum.abs() < 1e-12, "row sum {row_sum}");
                for j in 0..3 {
                    assert_eq!(st.s[(i, j)], st.s[(j, i)]);
                }
            }
            let eig = nalgebra::SymmetricEigen::new(st.s);
            let min = eig.eigenvalues.min();
            assert!(min > -1e-12, "min eigenvalue {min}");
        }
    }

    #[test]
    fn trace_matches_edge_form_on_random_inputs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let (a, b, c) = random_triangle(&mut rng);
            let u = [
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ];
            let st = per_triangle_stiffness(a, b, c).unwrap();
            let direct = st.dirichlet_energy(u);
            let edge = dirichlet_energy_edge_form(a, b, c, u).unwrap();
            assert!(
                (direct - edge).abs() < 1e-12,
                "direct {direct} vs edge {edge}"
            );
        }
    }

    #[test]
    fn linear_function_identity() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..2_000 {
            let (a, b, c) = random_triangle(&mut rng);
            let g = Vec3::new(
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
                rng.random_range(-2.0..2.0),
            );
            let offset: f64 = rng.random_range(-2.0..2.0);
            let u = [g.dot(&a) + offset, g.dot(&b) + offset, g.dot(&c) + offset];
            let st = per_triangle_stiffness(a, b, c).unwrap();
            let area = triangle_area(a, b, c);
            let normal = (b - a).cross(&(c - a)).normalize();
            let g_tan = g - normal * g.dot(&normal);
            let expected = area * g_tan.norm_squared();
            let got = st.dirichlet_energy(u);
            assert_relative_eq!(got, expected, epsilon = 1e-9, max_relative = 1e-9);
        }
    }

    proptest! {
        #[test]
        fn scale_and_rigid_invariance(
            ax in -1.0..1.0f64, ay in -1.0..1.0f64, az in -1.0..1.0f64,
            bx in -1.0..1.0f64, by in -1.0..1.0f64, bz in -1.0..1.0f64,
            cx in -1.0..1.0f64, cy in -1.0..1.0f64, cz in -1.0..1.0f64,
            yaw in 0.0..std::f64::consts::TAU,
            pitch in -1.5..1.5f64,
            tx in -5.0..5.0f64,
        ) {
            let a = Vec3::new(ax, ay, az);
            let b = Vec3::new(bx, by, bz);
            let c = Vec3::new(cx, cy, cz);
            prop_assume!(triangle_area(a, b, c) > 1e-3);
            let base = per_triangle_stiffness(a, b, c).unwrap();

            for sigma in [0.1, 1.0, 10.0] {
                let scaled = per_triangle_stiffness(a * sigma, b * sigma, c * sigma).unwrap();
                for i in 0..3 {
                    for j in 0..3 {
                        prop_assert!(
                            (scaled.s[(i, j)] - base.s[(i, j)]).abs()
                                <= 1e-9 * base.s[(i, j)].abs().max(1.0)
                        );
                    }
                }
            }

            let rot = nalgebra::Rotation3::from_euler_angles(pitch, yaw, 0.3);
            let t = Vec3::new(tx, 1.0, -2.0);
            let moved = per_triangle_stiffness(rot * a + t, rot * b + t, rot * c + t).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    prop_assert!(
                        (moved.s[(i, j)] - base.s[(i, j)]).abs()
                            <= 1e-9 * base.s[(i, j)].abs().max(1.0)
                    );
                }
            }
        }

        #[test]
        fn energy_is_even_in_u(
            u0 in -3.0..3.0f64, u1 in -3.0..3.0f64, u2 in -3.0..3.0f64,
        ) {
            let (a, b, c) = (
                Vec3::new(0.0, 0.0, 0.0),
                Vec3::new(1.3, 0.1, 0.0),
                Vec3::new(0.2, 1.1, 0.4),
            );
            let st = per_triangle_stiffness(a, b, c).unwrap();
            let pos = st.dirichlet_energy([u0, u1, u2]);
            let neg = st.dirichlet_energy([-u0, -u1, -u2]);
            prop_assert!((pos - neg).abs() < 1e-12);
        }
    }
}
