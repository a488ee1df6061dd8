//! Tube surfaces swept along closed space curves with a rotation-minimizing
//! frame.
//!
//! Frames are propagated by the double-reflection method and closed up by
//! distributing the loop holonomy linearly in the curve parameter, so the
//! swept mesh is seamless. Principal curvatures of a constant-radius tube
//! depend only on the radial direction, not on the frame twist: along the
//! meridian circle the curvature is `1/r`, and along the sweep it is
//! `κ_n / (1 - r·κ_n)` with `κ_n` the curve's normal curvature component in
//! the radial direction.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::Vec3;

/// Closed space curves available as tube centerlines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KnotCurve {
    /// A (p, q) torus knot on a carrier torus with radii (2, 1):
    /// `((2 + cos(q t)) cos(p t), (2 + cos(q t)) sin(p t), sin(q t))`.
    ///
    /// `(1, 0)` degenerates to the planar circle of radius 3, so the swept
    /// tube reproduces a standard torus.
    TorusKnot { p: u32, q: u32 },
    /// The figure-eight knot
    /// `((2 + cos 2t) cos 3t, (2 + cos 2t) sin 3t, sin 4t)`.
    FigureEight,
}

impl KnotCurve {
    const CARRIER_MAJOR: f64 = 2.0;
    const CARRIER_MINOR: f64 = 1.0;

    /// Curve position at parameter `t` (period 2π).
    pub fn position(&self, t: f64) -> Vec3 {
        match *self {
            KnotCurve::TorusKnot { p, q } => {
                let (p, q) = (p as f64, q as f64);
                let w = Self::CARRIER_MAJOR + Self::CARRIER_MINOR * (q * t).cos();
                Vec3::new(
                    w * (p * t).cos(),
                    w * (p * t).sin(),
                    Self::CARRIER_MINOR * (q * t).sin(),
                )
            }
            KnotCurve::FigureEight => {
                let w = 2.0 + (2.0 * t).cos();
                Vec3::new(w * (3.0 * t).cos(), w * (3.0 * t).sin(), (4.0 * t).sin())
            }
        }
    }

    /// First derivative dγ/dt.
    pub fn derivative(&self, t: f64) -> Vec3 {
        match *self {
            KnotCurve::TorusKnot { p, q } => {
                let (p, q) = (p as f64, q as f64);
                let w = Self::CARRIER_MAJOR + Self::CARRIER_MINOR * (q * t).cos();
                let dw = -Self::CARRIER_MINOR * q * (q * t).sin();
                Vec3::new(
                    dw * (p * t).cos() - w * p * (p * t).sin(),
                    dw * (p * t).sin() + w * p * (p * t).cos(),
                    Self::CARRIER_MINOR * q * (q * t).cos(),
                )
            }
            KnotCurve::FigureEight => {
                let w = 2.0 + (2.0 * t).cos();
                let dw = -2.0 * (2.0 * t).sin();
                Vec3::new(
                    dw * (3.0 * t).cos() - 3.0 * w * (3.0 * t).sin(),
                    dw * (3.0 * t).sin() + 3.0 * w * (3.0 * t).cos(),
                    4.0 * (4.0 * t).cos(),
                )
            }
        }
    }

    /// Second derivative d²γ/dt².
    pub fn second_derivative(&self, t: f64) -> Vec3 {
        match *self {
            KnotCurve::TorusKnot { p, q } => {
                let (p, q) = (p as f64, q as f64);
                let w = Self::CARRIER_MAJOR + Self::CARRIER_MINOR * (q * t).cos();
                let dw = -Self::CARRIER_MINOR * q * (q * t).sin();
                let ddw = -Self::CARRIER_MINOR * q * q * (q * t).cos();
                Vec3::new(
                    ddw * (p * t).cos() - 2.0 * dw * p * (p * t).sin() - w * p * p * (p * t).cos(),
                    ddw * (p * t).sin() + 2.0 * dw * p * (p * t).cos() - w * p * p * (p * t).sin(),
                    -Self::CARRIER_MINOR * q * q * (q * t).sin(),
                )
            }
            KnotCurve::FigureEight => {
                let w = 2.0 + (2.0 * t).cos();
                let dw = -2.0 * (2.0 * t).sin();
                let ddw = -4.0 * (2.0 * t).cos();
                Vec3::new(
                    ddw * (3.0 * t).cos() - 6.0 * dw * (3.0 * t).sin() - 9.0 * w * (3.0 * t).cos(),
                    ddw * (3.0 * t).sin() + 6.0 * dw * (3.0 * t).cos() - 9.0 * w * (3.0 * t).sin(),
                    -16.0 * (4.0 * t).sin(),
                )
            }
        }
    }

    /// Unit tangent at `t`.
    pub fn tangent(&self, t: f64) -> Vec3 {
        self.derivative(t).normalize()
    }

    /// Curvature `|γ' × γ''| / |γ'|³` at `t`.
    pub fn curvature(&self, t: f64) -> f64 {
        let d1 = self.derivative(t);
        let d2 = self.second_derivative(t);
        d1.cross(&d2).norm() / d1.norm().powi(3)
    }

    /// Curvature vector per arc length, `dT/ds = (γ'' - (γ''·T̂)T̂) / |γ'|²`.
    pub fn curvature_vector(&self, t: f64) -> Vec3 {
        let d1 = self.derivative(t);
        let d2 = self.second_derivative(t);
        let tangent = d1.normalize();
        (d2 - tangent * d2.dot(&tangent)) / d1.norm_squared()
    }
}

/// Number of stored frame samples along the curve.
const FRAME_SAMPLES: usize = 4096;

/// A frame sample: curve parameter position plus the transported `e1` axis.
#[derive(Debug, Clone, Copy)]
struct FrameSample {
    e1: Vec3,
}

/// A constant-radius tube around a [`KnotCurve`], with precomputed
/// rotation-minimizing frames.
#[derive(Debug, Clone)]
pub struct TubeSurface {
    pub curve: KnotCurve,
    pub r_tube: f64,
    frames: Vec<FrameSample>,
    /// Signed holonomy angle of one full transport loop, distributed
    /// linearly over `t` so the sweep closes seamlessly.
    holonomy: f64,
}

/// One double-reflection transport step of `e1` from (p0, t0) to (p1, t1).
pub(crate) fn double_reflection(p0: Vec3, tan0: Vec3, e1: Vec3, p1: Vec3, tan1: Vec3) -> Vec3 {
    let v1 = p1 - p0;
    let c1 = v1.norm_squared();
    if c1 == 0.0 {
        return e1;
    }
    let e1_l = e1 - v1 * (2.0 / c1) * v1.dot(&e1);
    let tan_l = tan0 - v1 * (2.0 / c1) * v1.dot(&tan0);
    let v2 = tan1 - tan_l;
    let c2 = v2.norm_squared();
    let e1_next = if c2 == 0.0 {
        e1_l
    } else {
        e1_l - v2 * (2.0 / c2) * v2.dot(&e1_l)
    };
    // re-orthogonalize against the tangent to stop drift
    (e1_next - tan1 * e1_next.dot(&tan1)).normalize()
}

fn rotate_about(axis: Vec3, v: Vec3, angle: f64) -> Vec3 {
    nalgebra::Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(axis), angle) * v
}

impl TubeSurface {
    /// Build the tube, checking the local self-intersection bound
    /// `r_tube · max curvature < 1`.
    pub fn new(curve: KnotCurve, r_tube: f64) -> Result<Self> {
        let step = TAU / FRAME_SAMPLES as f64;
        let max_curvature = (0..FRAME_SAMPLES)
            .map(|k| curve.curvature(k as f64 * step))
            .fold(0.0, f64::max);
        if r_tube <= 0.0 || r_tube * max_curvature >= 1.0 {
            return Err(Error::SelfIntersectingTube {
                r_tube,
                max_curvature,
            });
        }

        // initial e1: global axis least aligned with the tangent, projected
        let tan0 = curve.tangent(0.0);
        let axis = least_aligned_axis(tan0);
        let e1_0 = (axis - tan0 * axis.dot(&tan0)).normalize();

        let mut frames = Vec::with_capacity(FRAME_SAMPLES);
        frames.push(FrameSample { e1: e1_0 });
        let mut e1 = e1_0;
        let mut prev_p = curve.position(0.0);
        let mut prev_t = tan0;
        for k in 1..=FRAME_SAMPLES {
            let t = k as f64 * step;
            let p = curve.position(t);
            let tan = curve.tangent(t);
            e1 = double_reflection(prev_p, prev_t, e1, p, tan);
            if k < FRAME_SAMPLES {
                frames.push(FrameSample { e1 });
            }
            prev_p = p;
            prev_t = tan;
        }
        // `e1` now holds the frame transported once around the loop; its
        // signed angle to the start frame (about the shared tangent) is the
        // holonomy that the seam correction must absorb.
        let holonomy = {
            let cross = e1.cross(&e1_0).dot(&tan0);
            let dot = e1.dot(&e1_0);
            cross.atan2(dot)
        };
        Ok(Self {
            curve,
            r_tube,
            frames,
            holonomy,
        })
    }

    /// Frame `(e1, e2, tangent)` at curve parameter `t`, holonomy-corrected.
    pub fn frame_at(&self, t: f64) -> (Vec3, Vec3, Vec3) {
        let tt = t.rem_euclid(TAU);
        let step = TAU / FRAME_SAMPLES as f64;
        let k = ((tt / step) as usize).min(FRAME_SAMPLES - 1);
        let tk = k as f64 * step;
        let tan = self.curve.tangent(tt);
        let raw = double_reflection(
            self.curve.position(tk),
            self.curve.tangent(tk),
            self.frames[k].e1,
            self.curve.position(tt),
            tan,
        );
        let corrected = rotate_about(tan, raw, self.holonomy * tt / TAU);
        let e2 = corrected.cross(&tan);
        (corrected, e2, tan)
    }

    /// Surface point at (t, θ): `γ(t) + r (cos θ e1 + sin θ e2)`.
    pub fn position(&self, t: f64, theta: f64) -> Vec3 {
        let (e1, e2, _) = self.frame_at(t);
        self.curve.position(t) + (e1 * theta.cos() + e2 * theta.sin()) * self.r_tube
    }

    /// Outward unit normal at (t, θ): the radial direction.
    pub fn normal(&self, t: f64, theta: f64) -> Vec3 {
        let (e1, e2, _) = self.frame_at(t);
        e1 * theta.cos() + e2 * theta.sin()
    }

    /// Principal curvatures (sweep direction, meridian direction) at (t, θ).
    pub fn principal_curvatures(&self, t: f64, theta: f64) -> (f64, f64) {
        let radial = self.normal(t, theta);
        let kappa_n = self.curve.curvature_vector(t).dot(&radial);
        (kappa_n / (1.0 - self.r_tube * kappa_n), -1.0 / self.r_tube)
    }
}

/// Global coordinate axis least aligned with `v`.
pub fn least_aligned_axis(v: Vec3) -> Vec3 {
    let abs = [v.x.abs(), v.y.abs(), v.z.abs()];
    let mut best = 0;
    for i in 1..3 {
        if abs[i] < abs[best] {
            best = i;
        }
    }
    let mut axis = Vec3::zeros();
    axis[best] = 1.0;
    axis
}
