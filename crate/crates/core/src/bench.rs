//! Runtime scaling of training and detection with series length.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::config::PrecogConfig;
use crate::detector::{detect, train};
use crate::error::{PrecogError, Result};
use crate::preprocess::preprocess;
use crate::series::TimeSeries;
use crate::synth::{generate, PatternParams, EPOCH_START};

/// Shortest series accepted by [`bench_scaling`].
pub const MIN_SIZE: usize = 100;

/// Noise added on top of the tiled base pattern, in percent.
const TILE_NOISE_SIGMA: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub size: usize,
    pub train_ms: f64,
    pub predict_ms: f64,
}

/// Preprocessed series of exactly `size` points: a seeded leak pattern tiled
/// end to end, with fresh Gaussian noise on every point.
pub fn tiled_series(size: usize, cfg: &PrecogConfig, seed: u64) -> Result<TimeSeries> {
    let base_params = PatternParams::LinearNoise {
        base: 20.0,
        onset_fraction: 0.3,
        slope_per_hour: 0.5,
        noise_sigma: 1.0,
    };
    let raw = generate(&base_params, 5.0, seed)?;
    let base = preprocess(&raw.series, cfg)?;
    let normal = Normal::new(0.0, TILE_NOISE_SIGMA).expect("positive sigma");
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let values = base
        .values()
        .iter()
        .cycle()
        .take(size)
        .map(|v| (v + normal.sample(&mut rng)).clamp(0.0, 100.0))
        .collect();
    TimeSeries::regular(EPOCH_START, cfg.resample_resolution_s as i64, values)
}

fn median(mut samples: Vec<Duration>) -> f64 {
    samples.sort();
    let n = samples.len();
    let mid = if n % 2 == 1 {
        samples[n / 2]
    } else {
        (samples[n / 2 - 1] + samples[n / 2]) / 2
    };
    mid.as_secs_f64() * 1e3
}

/// Times `train` and `detect` on tiled series of each size, reporting the
/// median wall-clock milliseconds over `repetitions` runs.
pub fn bench_scaling(sizes: &[usize], repetitions: usize, seed: u64) -> Result<Vec<BenchRow>> {
    if sizes.is_empty() {
        return Err(PrecogError::InvalidSizes("no sizes given".into()));
    }
    if let Some(&s) = sizes.iter().find(|&&s| s < MIN_SIZE) {
        return Err(PrecogError::InvalidSizes(format!("size {s} is below the minimum {MIN_SIZE}")));
    }
    if sizes.windows(2).any(|w| w[1] <= w[0]) {
        return Err(PrecogError::InvalidSizes("sizes must be strictly ascending".into()));
    }
    if repetitions == 0 {
        return Err(PrecogError::InvalidSizes("at least one repetition is required".into()));
    }

    let cfg = PrecogConfig::default();
    sizes
        .iter()
        .map(|&size| {
            let series = tiled_series(size, &cfg, seed)?;
            let mut train_times = Vec::with_capacity(repetitions);
            let mut predict_times = Vec::with_capacity(repetitions);
            for _ in 0..repetitions {
                let t = Instant::now();
                let model = train(&series, &cfg)?;
                train_times.push(t.elapsed());

                let t = Instant::now();
                let result = detect(&series, &model, &cfg)?;
                predict_times.push(t.elapsed());
                std::hint::black_box(result);
            }
            Ok(BenchRow {
                size,
                train_ms: median(train_times),
                predict_ms: median(predict_times),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiled_series_has_requested_length_and_spacing() {
        let cfg = PrecogConfig::default();
        let ts = tiled_series(3000, &cfg, 9).unwrap();
        assert_eq!(ts.len(), 3000);
        assert!(ts.timestamps().windows(2).all(|w| w[1] - w[0] == 300));
        assert_eq!(ts, tiled_series(3000, &cfg, 9).unwrap());
    }

    #[test]
    fn one_row_per_size_with_positive_timings() {
        let rows = bench_scaling(&[1000], 3, 1).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].size, 1000);
        assert!(rows[0].train_ms > 0.0 && rows[0].predict_ms > 0.0);
    }

    #[test]
    fn rejects_bad_sizes() {
        for sizes in [&[][..], &[50][..], &[2000, 1000][..], &[1000, 1000][..]] {
            assert!(matches!(bench_scaling(sizes, 1, 0), Err(PrecogError::InvalidSizes(_))));
        }
        assert!(matches!(bench_scaling(&[1000], 0, 0), Err(PrecogError::InvalidSizes(_))));
    }
}
