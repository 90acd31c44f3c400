//! Regularization and smoothing applied before both training and detection.

use crate::config::PrecogConfig;
use crate::error::{PrecogError, Result};
use crate::series::TimeSeries;

/// Downsamples onto a regular grid of `resolution_s` seconds anchored at the
/// first observation.
///
/// Each bucket `[start, start + resolution_s)` takes the mean of the raw
/// observations falling in it. Empty buckets are linearly interpolated
/// between the nearest populated neighbours; the first and last bucket are
/// never empty.
pub fn resample(ts: &TimeSeries, resolution_s: u64) -> Result<TimeSeries> {
    if resolution_s == 0 {
        return Err(PrecogError::InvalidConfig("resample resolution must be positive".into()));
    }
    let step = resolution_s as i64;
    let origin = ts.first_timestamp();
    let buckets = ((ts.last_timestamp() - origin) / step) as usize + 1;

    let mut sums = vec![0.0; buckets];
    let mut counts = vec![0usize; buckets];
    for (t, v) in ts.iter() {
        let b = ((t - origin) / step) as usize;
        sums[b] += v;
        counts[b] += 1;
    }

    let mut values: Vec<Option<f64>> = sums
        .iter()
        .zip(&counts)
        .map(|(&s, &c)| (c > 0).then(|| s / c as f64))
        .collect();
    fill_gaps(&mut values);

    TimeSeries::regular(origin, step, values.into_iter().map(|v| v.unwrap_or_default()).collect())
}

fn fill_gaps(values: &mut [Option<f64>]) {
    let mut prev: Option<usize> = None;
    for i in 0..values.len() {
        if values[i].is_none() {
            continue;
        }
        if let Some(p) = prev {
            if i > p + 1 {
                let (a, b) = (values[p].unwrap(), values[i].unwrap());
                let span = (i - p) as f64;
                for (k, slot) in values.iter_mut().enumerate().take(i).skip(p + 1) {
                    *slot = Some(a + (b - a) * (k - p) as f64 / span);
                }
            }
        }
        prev = Some(i);
    }
}

/// Trailing median filter: point `i` becomes the median of every point `j ≤ i`
/// with `t_i - t_j < window_s`. Even-sized windows average the two middle values.
pub fn median_smooth(ts: &TimeSeries, window_s: u64) -> TimeSeries {
    let window = window_s as i64;
    let times = ts.timestamps();
    let values = ts.values();
    let mut out = Vec::with_capacity(values.len());
    let mut scratch = Vec::new();
    let mut lo = 0;
    for (i, &t) in times.iter().enumerate() {
        while t - times[lo] >= window && lo < i {
            lo += 1;
        }
        scratch.clear();
        scratch.extend_from_slice(&values[lo..=i]);
        out.push(median_in_place(&mut scratch));
    }
    TimeSeries::new(times.to_vec(), out).expect("timestamps unchanged")
}

fn median_in_place(buf: &mut [f64]) -> f64 {
    let n = buf.len();
    let mid = n / 2;
    let (lower, upper_mid, _) = buf.select_nth_unstable_by(mid, f64::total_cmp);
    let upper_mid = *upper_mid;
    if n % 2 == 1 {
        upper_mid
    } else {
        let lower_mid = lower.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        0.5 * (lower_mid + upper_mid)
    }
}

/// Resample then median-smooth with the configured resolution and window.
pub fn preprocess(ts: &TimeSeries, cfg: &PrecogConfig) -> Result<TimeSeries> {
    let regular = resample(ts, cfg.resample_resolution_s)?;
    Ok(median_smooth(&regular, cfg.smoothing_window_s))
}
