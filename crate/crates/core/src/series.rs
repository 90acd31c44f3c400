//! Memory-utilization time series and ingestion validation.

use serde::{Deserialize, Serialize};

use crate::error::{PrecogError, Result};

/// Values up to this far outside `[0, 100]` are treated as rounding overshoot and clamped.
pub const CLAMP_TOLERANCE: f64 = 0.5;

/// Memory utilization (percent) of a single VM, indexed by epoch seconds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    timestamps: Vec<i64>,
    values: Vec<f64>,
}

impl TimeSeries {
    /// Builds a series after checking the structural invariants: non-empty,
    /// equal lengths and strictly increasing timestamps. Value range is
    /// checked separately by [`validate_series`].
    pub fn new(timestamps: Vec<i64>, values: Vec<f64>) -> Result<Self> {
        if timestamps.len() != values.len() {
            return Err(PrecogError::LengthMismatch {
                timestamps: timestamps.len(),
                values: values.len(),
            });
        }
        if timestamps.is_empty() {
            return Err(PrecogError::EmptySeries);
        }
        if let Some(i) = timestamps.windows(2).position(|w| w[1] <= w[0]) {
            return Err(PrecogError::NonMonotonicTimestamps { index: i + 1 });
        }
        Ok(Self { timestamps, values })
    }

    /// Builds a series from `(timestamp, value)` pairs.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, f64)>,
    {
        let (timestamps, values) = pairs.into_iter().unzip();
        Self::new(timestamps, values)
    }

    /// Regularly spaced series starting at `start` with `step` seconds between points.
    pub fn regular(start: i64, step: i64, values: Vec<f64>) -> Result<Self> {
        let timestamps = (0..values.len() as i64).map(|i| start + i * step).collect();
        Self::new(timestamps, values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false for a constructed series; present for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn timestamps(&self) -> &[i64] {
        &self.timestamps
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn first_timestamp(&self) -> i64 {
        self.timestamps[0]
    }

    pub fn last_timestamp(&self) -> i64 {
        self.timestamps[self.timestamps.len() - 1]
    }

    /// Iterates `(timestamp, value)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.timestamps.iter().copied().zip(self.values.iter().copied())
    }

    /// Inclusive sub-series `[start, end]`.
    ///
    /// # Panics
    /// If the range is empty or out of bounds.
    pub fn slice(&self, start: usize, end: usize) -> TimeSeries {
        assert!(start <= end && end < self.len(), "slice [{start}, {end}] out of bounds");
        TimeSeries {
            timestamps: self.timestamps[start..=end].to_vec(),
            values: self.values[start..=end].to_vec(),
        }
    }

    /// Splits into `[0, at)` and `[at, len)`. Both halves must be non-empty.
    pub fn split_at(&self, at: usize) -> Result<(TimeSeries, TimeSeries)> {
        if at == 0 || at >= self.len() {
            return Err(PrecogError::SeriesTooShort {
                len: self.len(),
                min: 2,
            });
        }
        Ok((self.slice(0, at - 1), self.slice(at, self.len() - 1)))
    }

    pub fn into_parts(self) -> (Vec<i64>, Vec<f64>) {
        (self.timestamps, self.values)
    }
}

/// Outcome of [`validate_series`]: the cleaned series plus how many values were clamped.
#[derive(Debug, Clone, PartialEq)]
pub struct Validated {
    pub series: TimeSeries,
    pub clamped: usize,
}

/// Checks a freshly ingested series and clamps small overshoots into `[0, 100]`.
///
/// Values more than [`CLAMP_TOLERANCE`] outside the range, and non-finite
/// values, are rejected with the offending index.
pub fn validate_series(ts: TimeSeries) -> Result<Validated> {
    let (timestamps, mut values) = ts.into_parts();
    let mut clamped = 0;
    for (index, v) in values.iter_mut().enumerate() {
        let value = *v;
        if !(-CLAMP_TOLERANCE..=100.0 + CLAMP_TOLERANCE).contains(&value) {
            return Err(PrecogError::ValueOutOfRange { index, value });
        }
        if !(0.0..=100.0).contains(&value) {
            *v = value.clamp(0.0, 100.0);
            clamped += 1;
        }
    }
    Ok(Validated {
        series: TimeSeries::new(timestamps, values)?,
        clamped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valid_series_passes_through() {
        let ts = TimeSeries::from_pairs([(0, 50.0), (60, 51.0)]).unwrap();
        let out = validate_series(ts.clone()).unwrap();
        assert_eq!(out.series, ts);
        assert_eq!(out.clamped, 0);
    }

    #[test]
    fn duplicate_timestamp_is_rejected() {
        let err = TimeSeries::from_pairs([(0, 50.0), (0, 51.0)]).unwrap_err();
        assert!(matches!(err, PrecogError::NonMonotonicTimestamps { index: 1 }));
    }

    #[test]
    fn small_overshoot_is_clamped() {
        let ts = TimeSeries::from_pairs([(0, 50.0), (60, 100.3)]).unwrap();
        let out = validate_series(ts).unwrap();
        assert_eq!(out.series.values(), &[50.0, 100.0]);
        assert_eq!(out.clamped, 1);
    }

    #[test]
    fn small_undershoot_is_clamped() {
        let ts = TimeSeries::from_pairs([(0, -0.2), (60, 3.0)]).unwrap();
        let out = validate_series(ts).unwrap();
        assert_eq!(out.series.values(), &[0.0, 3.0]);
        assert_eq!(out.clamped, 1);
    }

    #[test]
    fn large_overshoot_is_rejected() {
        let ts = TimeSeries::from_pairs([(0, 50.0), (60, 100.6), (120, 101.0)]).unwrap();
        let err = validate_series(ts).unwrap_err();
        assert!(matches!(err, PrecogError::ValueOutOfRange { index: 1, .. }));
    }

    #[test]
    fn nan_is_rejected() {
        let ts = TimeSeries::from_pairs([(0, f64::NAN)]).unwrap();
        assert!(matches!(
            validate_series(ts),
            Err(PrecogError::ValueOutOfRange { index: 0, .. })
        ));
    }

    #[test]
    fn empty_series_is_rejected() {
        assert!(matches!(
            TimeSeries::new(vec![], vec![]),
            Err(PrecogError::EmptySeries)
        ));
    }

    #[test]
    fn validation_is_idempotent() {
        let ts = TimeSeries::from_pairs([(0, 100.4), (5, 20.0), (9, -0.1)]).unwrap();
        let once = validate_series(ts).unwrap();
        let twice = validate_series(once.series.clone()).unwrap();
        assert_eq!(once.series, twice.series);
        assert_eq!(twice.clamped, 0);
    }

    #[test]
    fn split_keeps_both_halves() {
        let ts = TimeSeries::regular(0, 60, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let (a, b) = ts.split_at(3).unwrap();
        assert_eq!(a.values(), &[1.0, 2.0, 3.0]);
        assert_eq!(b.timestamps(), &[180]);
    }
}
