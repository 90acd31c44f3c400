//! Least-squares trend lines and their projected time to exhaustion.

use crate::config::PrecogConfig;
use crate::error::{PrecogError, Result};
use crate::series::TimeSeries;

/// Ordinary least-squares line over `(timestamp, value)`.
///
/// `intercept` is the fitted value at the segment's first timestamp; the
/// regression is carried out on timestamps relative to that instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    /// Percent per second.
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// A segment of the preprocessed series summarized by its fitted line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FittedTrend {
    /// Percent per second.
    pub slope: f64,
    pub r2: f64,
    /// Seconds between the first and last timestamp of the segment.
    pub duration: f64,
    /// Seconds from the segment end until the fitted line reaches the
    /// threshold; `0` when already there, `+inf` when never.
    pub exit_time: f64,
    pub start_index: usize,
    pub end_index: usize,
}

/// Coefficient of determination with the flat-segment convention: when the
/// values have no variance, a zero residual counts as a perfect fit.
fn r_squared(ss_res: f64, ss_tot: f64) -> f64 {
    if ss_tot == 0.0 {
        if ss_res == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    }
}

/// Fits `value = intercept + slope * (t - t_first)` by ordinary least squares.
pub fn fit_line(segment: &TimeSeries) -> Result<LineFit> {
    let n = segment.len();
    if n < 2 {
        return Err(PrecogError::SegmentTooShort { len: n, min: 2 });
    }
    let t0 = segment.first_timestamp();
    let xs: Vec<f64> = segment.timestamps().iter().map(|&t| (t - t0) as f64).collect();
    // Centering on the first value keeps constant segments exactly flat.
    let y0 = segment.values()[0];
    let ys: Vec<f64> = segment.values().iter().map(|&y| y - y0).collect();

    let nf = n as f64;
    let mean_x = xs.iter().sum::<f64>() / nf;
    let mean_y = ys.iter().sum::<f64>() / nf;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(&ys) {
        let (dx, dy) = (x - mean_x, y - mean_y);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(&x, &y)| (y - intercept - slope * x).powi(2))
        .sum();

    Ok(LineFit {
        slope,
        intercept: y0 + intercept,
        r2: r_squared(ss_res, syy),
    })
}

/// Seconds until a line currently at `end_value` and rising at `slope`
/// reaches `threshold_u`.
pub fn exit_time(end_value: f64, slope: f64, threshold_u: f64) -> f64 {
    if end_value >= threshold_u {
        0.0
    } else if slope <= 0.0 {
        f64::INFINITY
    } else {
        (threshold_u - end_value) / slope
    }
}

/// Fits and characterizes a whole standalone segment.
pub fn characterize(segment: &TimeSeries, cfg: &PrecogConfig) -> Result<FittedTrend> {
    characterize_range(segment, 0, segment.len().saturating_sub(1), cfg)
}

/// Fits and characterizes the inclusive range `[start, end]` of `series`,
/// reporting indices relative to `series`.
pub fn characterize_range(
    series: &TimeSeries,
    start: usize,
    end: usize,
    cfg: &PrecogConfig,
) -> Result<FittedTrend> {
    let len = if end >= start { end - start + 1 } else { 0 };
    if len < cfg.min_segment_points || end >= series.len() {
        return Err(PrecogError::SegmentTooShort {
            len,
            min: cfg.min_segment_points,
        });
    }
    let segment = series.slice(start, end);
    let fit = fit_line(&segment)?;
    let duration = (segment.last_timestamp() - segment.first_timestamp()) as f64;
    let end_value = fit.intercept + fit.slope * duration;
    Ok(FittedTrend {
        slope: fit.slope,
        r2: fit.r2,
        duration,
        exit_time: exit_time(end_value, fit.slope, cfg.threshold_u),
        start_index: start,
        end_index: end,
    })
}

/// Streaming least-squares accumulator (Welford updates).
///
/// Abscissae are supplied relative to a caller-chosen reference so that
/// epoch-scale timestamps do not swamp the sums. Points may be added in any
/// order, which lets training grow segments rightward and detection grow
/// them leftward at constant cost per point.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunningFit {
    n: usize,
    mean_x: f64,
    mean_y: f64,
    sxx: f64,
    sxy: f64,
    syy: f64,
}

impl RunningFit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64, y: f64) {
        self.n += 1;
        let n = self.n as f64;
        let dx = x - self.mean_x;
        let dy = y - self.mean_y;
        self.mean_x += dx / n;
        self.mean_y += dy / n;
        self.sxx += dx * (x - self.mean_x);
        self.sxy += dx * (y - self.mean_y);
        self.syy += dy * (y - self.mean_y);
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn slope(&self) -> f64 {
        if self.sxx > 0.0 {
            self.sxy / self.sxx
        } else {
            0.0
        }
    }

    /// Fitted value at abscissa `x` (same reference as the pushed points).
    pub fn value_at(&self, x: f64) -> f64 {
        self.mean_y + self.slope() * (x - self.mean_x)
    }

    pub fn r2(&self) -> f64 {
        let ss_res = if self.syy == 0.0 {
            0.0
        } else {
            (self.syy - self.slope() * self.sxy).max(0.0)
        };
        r_squared(ss_res, self.syy)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg() -> PrecogConfig {
        PrecogConfig::default()
    }

    #[test]
    fn perfect_line() {
        let ts = TimeSeries::regular(0, 1, (0..20).map(|t| 10.0 + 0.5 * t as f64).collect())
            .unwrap();
        let fit = fit_line(&ts).unwrap();
        assert!((fit.slope - 0.5).abs() < 1e-12);
        assert!((fit.intercept - 10.0).abs() < 1e-12);
        assert_eq!(fit.r2, 1.0);
    }

    #[test]
    fn flat_segment_is_a_perfect_zero_slope_fit() {
        let ts = TimeSeries::regular(0, 300, vec![40.0; 10]).unwrap();
        let fit = fit_line(&ts).unwrap();
        assert_eq!(fit.slope, 0.0);
        assert_eq!(fit.intercept, 40.0);
        assert_eq!(fit.r2, 1.0);
    }

    #[test]
    fn constant_with_inexact_mean_is_still_flat() {
        // The plain mean of these values is not exactly 33.3.
        let ts = TimeSeries::regular(0, 300, vec![33.3; 13]).unwrap();
        let fit = fit_line(&ts).unwrap();
        assert_eq!((fit.slope, fit.intercept, fit.r2), (0.0, 33.3, 1.0));
    }

    #[test]
    fn single_point_is_too_short() {
        let ts = TimeSeries::regular(0, 300, vec![40.0]).unwrap();
        assert!(matches!(fit_line(&ts), Err(PrecogError::SegmentTooShort { len: 1, .. })));
    }

    #[test]
    fn exit_time_follows_projection() {
        // 0.1 %/min from a fitted end value of 40 reaches 100 after 600 min.
        let per_min = 0.1 / 60.0;
        let ts = TimeSeries::regular(0, 60, (0..=10).map(|m| 39.0 + 0.1 * m as f64).collect())
            .unwrap();
        let trend = characterize(&ts, &cfg()).unwrap();
        assert!((trend.slope - per_min).abs() < 1e-12);
        assert!((trend.exit_time - 600.0 * 60.0).abs() < 1e-6);
        assert_eq!(trend.duration, 600.0);
        assert_eq!((trend.start_index, trend.end_index), (0, 10));
        assert_eq!(exit_time(40.0, per_min, 100.0), 600.0 * 60.0);
    }

    #[test]
    fn decreasing_segment_never_exits() {
        let ts = TimeSeries::regular(0, 60, (0..10).map(|m| 80.0 - m as f64).collect()).unwrap();
        assert_eq!(characterize(&ts, &cfg()).unwrap().exit_time, f64::INFINITY);
    }

    #[test]
    fn segment_ending_at_threshold_exits_immediately() {
        let ts = TimeSeries::regular(0, 60, (0..=10).map(|m| 90.0 + m as f64).collect()).unwrap();
        assert_eq!(characterize(&ts, &cfg()).unwrap().exit_time, 0.0);
    }

    #[test]
    fn characterize_requires_min_segment_points() {
        let ts = TimeSeries::regular(0, 60, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!(matches!(
            characterize(&ts, &cfg()),
            Err(PrecogError::SegmentTooShort { len: 4, min: 5 })
        ));
    }

    #[test]
    fn running_fit_matches_batch_fit_in_either_direction() {
        let vals: Vec<f64> = (0..40).map(|i| 30.0 + 0.2 * i as f64 + ((i * 7) % 5) as f64).collect();
        let ts = TimeSeries::regular(1_700_000_000, 300, vals.clone()).unwrap();
        let batch = fit_line(&ts).unwrap();
        let t_end = ts.last_timestamp();

        let mut backwards = RunningFit::new();
        for (t, v) in ts.iter().collect::<Vec<_>>().into_iter().rev() {
            backwards.push((t - t_end) as f64, v);
        }
        assert!((backwards.slope() - batch.slope).abs() < 1e-12);
        assert!((backwards.r2() - batch.r2).abs() < 1e-12);
        let end_value = batch.intercept + batch.slope * (39.0 * 300.0);
        assert!((backwards.value_at(0.0) - end_value).abs() < 1e-9);
    }

    #[test]
    fn noiseless_ramp_slope_is_exact() {
        let slope_per_s = 70.0 / (2.0 * 86_400.0);
        let ts = TimeSeries::regular(
            1_600_000_000,
            300,
            (0..577).map(|i| 20.0 + slope_per_s * 300.0 * i as f64).collect(),
        )
        .unwrap();
        let fit = fit_line(&ts).unwrap();
        assert!(((fit.slope - slope_per_s) / slope_per_s).abs() < 1e-9);
    }

    // Normal equations solved by Cramer's rule on raw (uncentered) sums in
    // extended form, as an independent check on the centered computation.
    fn normal_equations(xs: &[f64], ys: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let sx: f64 = xs.iter().sum();
        let sy: f64 = ys.iter().sum();
        let sxx: f64 = xs.iter().map(|x| x * x).sum();
        let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
        let det = n * sxx - sx * sx;
        let slope = (n * sxy - sx * sy) / det;
        let intercept = (sxx * sy - sx * sxy) / det;
        (slope, intercept)
    }

    proptest! {
        #[test]
        fn matches_normal_equations(
            steps in prop::collection::vec(1i64..600, 1..200),
            noise in prop::collection::vec(-5.0f64..5.0, 201),
            slope in -0.01f64..0.01,
            base in 0.0f64..100.0,
        ) {
            let mut t = 0;
            let mut pairs = vec![(0i64, base + noise[0])];
            for (k, dt) in steps.iter().enumerate() {
                t += dt;
                pairs.push((t, base + slope * t as f64 + noise[k + 1]));
            }
            let ts = TimeSeries::from_pairs(pairs).unwrap();
            let xs: Vec<f64> = ts.timestamps().iter().map(|&t| t as f64).collect();
            let (s_ref, i_ref) = normal_equations(&xs, ts.values());
            let fit = fit_line(&ts).unwrap();
            prop_assert!((fit.slope - s_ref).abs() <= 1e-9 * s_ref.abs().max(1e-6));
            prop_assert!((fit.intercept - i_ref).abs() <= 1e-9 * i_ref.abs().max(1.0));
            prop_assert!((0.0..=1.0).contains(&fit.r2));
        }

        #[test]
        fn exit_time_non_increasing_in_slope(end in 0.0f64..120.0, a in 0.0f64..1.0, b in 0.0f64..1.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(exit_time(end, hi, 100.0) <= exit_time(end, lo, 100.0));
            let e = exit_time(end, hi, 100.0);
            let finite_positive = e > 0.0 && e.is_finite();
            prop_assert_eq!(finite_positive, end < 100.0 && hi > 0.0);
        }
    }
}
