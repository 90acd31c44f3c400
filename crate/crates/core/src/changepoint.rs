//! Change points from z-scores of absolute first differences.

use crate::error::{PrecogError, Result};

/// Spread of absolute differences below this fraction of their mean counts as
/// zero, so floating-point jitter on a perfectly linear ramp yields no change points.
const RELATIVE_STD_FLOOR: f64 = 1e-9;

/// Indices whose absolute first difference has a z-score above `z_threshold`,
/// together with both endpoints.
///
/// The difference `|x[i] - x[i-1]|` is attributed to index `i`. Mean and
/// population standard deviation are taken over all `n - 1` differences.
/// Output is sorted, unique and always starts with `0` and ends with `n - 1`.
pub fn detect_change_points(values: &[f64], z_threshold: f64) -> Result<Vec<usize>> {
    let n = values.len();
    if n < 2 {
        return Err(PrecogError::SeriesTooShort { len: n, min: 2 });
    }
    if z_threshold.is_nan() || z_threshold <= 0.0 {
        return Err(PrecogError::InvalidConfig(format!(
            "z threshold must be positive, got {z_threshold}"
        )));
    }

    let diffs: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let m = diffs.len() as f64;
    let mean = diffs.iter().sum::<f64>() / m;
    let var = diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / m;
    let std = var.sqrt();

    let mut points = Vec::with_capacity(8);
    points.push(0);
    if std > RELATIVE_STD_FLOOR * mean {
        points.extend(
            diffs
                .iter()
                .enumerate()
                .filter(|&(_, &d)| (d - mean) / std > z_threshold)
                .map(|(k, _)| k + 1)
                .filter(|&i| i < n - 1),
        );
    }
    points.push(n - 1);
    Ok(points)
}
