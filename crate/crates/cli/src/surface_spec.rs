//! Parsing of `--surface` specification strings.

use totalcurv::shapes::{KnotCurve, ParametricSurface};

use crate::CliError;

/// Parse strings like `sphere:1`, `torus:2:1`, `knot:torus23:0.25`,
/// `knot:fig8:0.25`.
pub fn parse_surface(spec: &str) -> Result<ParametricSurface, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let usage = || {
        CliError::Usage(format!(
            "bad --surface '{spec}': expected sphere:RADIUS, torus:R:r, or knot:{{torus23|fig8}}:TUBE_RADIUS"
        ))
    };
    let num = |s: &str| s.parse::<f64>().map_err(|_| usage());
    match parts.as_slice() {
        ["sphere", radius] => Ok(ParametricSurface::sphere(num(radius)?)),
        ["torus", major, minor] => {
            ParametricSurface::torus(num(major)?, num(minor)?).map_err(CliError::from)
        }
        ["knot", kind, tube_radius] => {
            let curve = match *kind {
                "torus23" => KnotCurve::TorusKnot { p: 2, q: 3 },
                "fig8" => KnotCurve::FigureEight,
                _ => return Err(usage()),
            };
            ParametricSurface::tube(curve, num(tube_radius)?).map_err(CliError::from)
        }
        _ => Err(usage()),
    }
}
