//! Percentile-clipped scalar-to-color mapping through a fixed 256-entry
//! blue → white → red table.

use std::sync::OnceLock;

use crate::error::{Error, Result};

fn lut() -> &'static [[u8; 3]; 256] {
    static LUT: OnceLock<[[u8; 3]; 256]> = OnceLock::new();
    LUT.get_or_init(|| {
        let mut table = [[0u8; 3]; 256];
        for (i, entry) in table.iter_mut().enumerate() {
            let (from, to, t) = if i < 128 {
                ([0.0, 0.0, 255.0], [255.0, 255.0, 255.0], i as f64 / 127.0)
            } else {
                (
                    [255.0, 255.0, 255.0],
                    [255.0, 0.0, 0.0],
                    (i - 128) as f64 / 127.0,
                )
            };
            for c in 0..3 {
                entry[c] = (from[c] + (to[c] - from[c]) * t).round() as u8;
            }
        }
        table
    })
}

/// Linear-interpolated percentile of sorted data.
fn percentile(sorted: &[f64], pct: f64) -> f64 {
    let pos = pct / 100.0 * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] * (1.0 - frac) + sorted[hi] * frac
}

/// Map values to RGB: clip to the [lo, hi] percentile range, then pass the
/// normalized value through the blue→white→red table with floor rounding.
/// A constant field maps to the table midpoint.
pub fn colorize(values: &[f64], clip_lo_pct: f64, clip_hi_pct: f64) -> Result<Vec<[u8; 3]>> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    assert!(
        (0.0..=100.0).contains(&clip_lo_pct)
            && (0.0..=100.0).contains(&clip_hi_pct)
            && clip_lo_pct < clip_hi_pct,
        "percentile clip bounds must satisfy 0 <= lo < hi <= 100"
    );
    let mut sorted: Vec<f64> = values.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let lo = percentile(&sorted, clip_lo_pct);
    let hi = percentile(&sorted, clip_hi_pct);
    let table = lut();
    Ok(values
        .iter()
        .map(|&v| {
            let t = if hi > lo {
                ((v - lo) / (hi - lo)).clamp(0.0, 1.0)
            } else {
                0.5
            };
            table[((t * 255.0).floor() as usize).min(255)]
        })
        .collect())
}
