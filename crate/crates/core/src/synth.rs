//! Seeded synthetic memory-utilization workloads with ground-truth leak labels.
//!
//! Leak patterns (label `true`):
//! - `linear`: steady baseline, then a noiseless linear leak from an onset
//!   point to the end of the series.
//! - `linear_noise`: the same shape with Gaussian noise.
//! - `sawtooth`: rise-and-partial-drop teeth whose floor climbs over time.
//!
//! Non-leaking patterns (label `false`):
//! - `flat_noise`: constant level plus noise.
//! - `stable_periodic`: daily sinusoid around a constant level.
//! - `plateau_ramp_history`: an early ramp that is released, followed by a
//!   shorter, no steeper ramp at the end of the series. The ending ramp only
//!   repeats behaviour already present in the history.

use std::fmt;
use std::str::FromStr;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::config::{DAY, MINUTE};
use crate::error::{PrecogError, Result};
use crate::series::TimeSeries;

/// First timestamp of every generated series (2024-01-01T00:00:00Z).
pub const EPOCH_START: i64 = 1_704_067_200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pattern {
    Linear,
    LinearNoise,
    Sawtooth,
    FlatNoise,
    StablePeriodic,
    PlateauRampHistory,
}

impl Pattern {
    pub const ALL: [Pattern; 6] = [
        Pattern::Linear,
        Pattern::LinearNoise,
        Pattern::Sawtooth,
        Pattern::FlatNoise,
        Pattern::StablePeriodic,
        Pattern::PlateauRampHistory,
    ];
    pub const LEAKS: [Pattern; 3] = [Pattern::Linear, Pattern::LinearNoise, Pattern::Sawtooth];
    pub const NORMAL: [Pattern; 3] =
        [Pattern::FlatNoise, Pattern::StablePeriodic, Pattern::PlateauRampHistory];

    pub fn name(self) -> &'static str {
        match self {
            Pattern::Linear => "linear",
            Pattern::LinearNoise => "linear_noise",
            Pattern::Sawtooth => "sawtooth",
            Pattern::FlatNoise => "flat_noise",
            Pattern::StablePeriodic => "stable_periodic",
            Pattern::PlateauRampHistory => "plateau_ramp_history",
        }
    }

    pub fn is_leak(self) -> bool {
        Pattern::LEAKS.contains(&self)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pattern {
    type Err = PrecogError;

    fn from_str(s: &str) -> Result<Self> {
        Pattern::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| PrecogError::InvalidParams(format!("unknown pattern `{s}`")))
    }
}

/// Shape parameters of one generated series. Levels are percent, slopes
/// percent per hour, times hours unless stated otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "pattern", rename_all = "snake_case")]
pub enum PatternParams {
    Linear {
        base: f64,
        /// Fraction of the span before the leak starts.
        onset_fraction: f64,
        slope_per_hour: f64,
    },
    LinearNoise {
        base: f64,
        onset_fraction: f64,
        slope_per_hour: f64,
        noise_sigma: f64,
    },
    Sawtooth {
        base: f64,
        rise_slope_per_hour: f64,
        /// Share of each tooth's rise released at its end, in (0, 1).
        drop_fraction: f64,
        tooth_hours_min: f64,
        tooth_hours_max: f64,
        /// Each tooth rises at `rise_slope_per_hour * (1 ± rise_jitter)`.
        rise_jitter: f64,
        noise_sigma: f64,
    },
    FlatNoise {
        level: f64,
        noise_sigma: f64,
    },
    StablePeriodic {
        level: f64,
        amplitude: f64,
        period_hours: f64,
        phase: f64,
        noise_sigma: f64,
    },
    PlateauRampHistory {
        base: f64,
        slope_per_hour: f64,
        /// Start and length of the historic ramp.
        history_start_hours: f64,
        history_hours: f64,
        /// Length of the final ramp; shorter than the historic one.
        recent_hours: f64,
        /// Final ramp slope relative to the historic one, in (0, 1].
        recent_slope_ratio: f64,
        noise_sigma: f64,
    },
}

impl PatternParams {
    pub fn pattern(&self) -> Pattern {
        match self {
            PatternParams::Linear { .. } => Pattern::Linear,
            PatternParams::LinearNoise { .. } => Pattern::LinearNoise,
            PatternParams::Sawtooth { .. } => Pattern::Sawtooth,
            PatternParams::FlatNoise { .. } => Pattern::FlatNoise,
            PatternParams::StablePeriodic { .. } => Pattern::StablePeriodic,
            PatternParams::PlateauRampHistory { .. } => Pattern::PlateauRampHistory,
        }
    }

    pub fn label(&self) -> bool {
        self.pattern().is_leak()
    }

    fn noise_sigma(&self) -> f64 {
        match *self {
            PatternParams::Linear { .. } => 0.0,
            PatternParams::LinearNoise { noise_sigma, .. }
            | PatternParams::Sawtooth { noise_sigma, .. }
            | PatternParams::FlatNoise { noise_sigma, .. }
            | PatternParams::StablePeriodic { noise_sigma, .. }
            | PatternParams::PlateauRampHistory { noise_sigma, .. } => noise_sigma,
        }
    }

    /// Long-run growth rate in percent per hour: the leak slope for linear
    /// leaks, the net floor climb for sawtooth and zero for bounded patterns.
    pub fn generating_slope_per_hour(&self) -> f64 {
        match *self {
            PatternParams::Linear { slope_per_hour, .. }
            | PatternParams::LinearNoise { slope_per_hour, .. } => slope_per_hour,
            PatternParams::Sawtooth {
                rise_slope_per_hour,
                drop_fraction,
                ..
            } => rise_slope_per_hour * (1.0 - drop_fraction),
            _ => 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(PrecogError::InvalidParams(format!("{}: {m}", self.pattern())));
        let level_ok = |v: f64| (0.0..100.0).contains(&v);
        // NaN fails every check below.
        let positive = |v: f64| v > 0.0;
        if !(self.noise_sigma() >= 0.0 && self.noise_sigma().is_finite()) {
            return fail("noise sigma must be non-negative");
        }
        match *self {
            PatternParams::Linear { base, onset_fraction, slope_per_hour }
            | PatternParams::LinearNoise { base, onset_fraction, slope_per_hour, .. } => {
                if !level_ok(base) {
                    return fail("base must be in [0, 100)");
                }
                if !(0.0..1.0).contains(&onset_fraction) {
                    return fail("onset fraction must be in [0, 1)");
                }
                if !positive(slope_per_hour) {
                    return fail("slope must be positive");
                }
            }
            PatternParams::Sawtooth {
                base,
                rise_slope_per_hour,
                drop_fraction,
                tooth_hours_min,
                tooth_hours_max,
                rise_jitter,
                ..
            } => {
                if !(0.0..1.0).contains(&rise_jitter) {
                    return fail("rise jitter must be in [0, 1)");
                }
                if !level_ok(base) {
                    return fail("base must be in [0, 100)");
                }
                if !positive(rise_slope_per_hour) {
                    return fail("rise slope must be positive");
                }
                if !(drop_fraction > 0.0 && drop_fraction < 1.0) {
                    return fail("drop fraction must be in (0, 1)");
                }
                if !(tooth_hours_min > 0.0 && tooth_hours_min <= tooth_hours_max) {
                    return fail("tooth length range must be positive and ordered");
                }
            }
            PatternParams::FlatNoise { level, .. } => {
                if !level_ok(level) {
                    return fail("level must be in [0, 100)");
                }
            }
            PatternParams::StablePeriodic { level, amplitude, period_hours, .. } => {
                if !level_ok(level) || !(0.0..).contains(&amplitude) || !positive(period_hours) {
                    return fail("level in [0, 100), amplitude >= 0 and period > 0 required");
                }
            }
            PatternParams::PlateauRampHistory {
                base,
                slope_per_hour,
                history_start_hours,
                history_hours,
                recent_hours,
                recent_slope_ratio,
                ..
            } => {
                if !level_ok(base) || !positive(slope_per_hour) {
                    return fail("base in [0, 100) and positive slope required");
                }
                if !(history_start_hours >= 0.0 && history_hours > 0.0) {
                    return fail("historic ramp must have non-negative start and positive length");
                }
                if !(recent_hours > 0.0 && recent_hours < history_hours) {
                    return fail("recent ramp must be shorter than the historic one");
                }
                if !(recent_slope_ratio > 0.0 && recent_slope_ratio <= 1.0) {
                    return fail("recent slope ratio must be in (0, 1]");
                }
            }
        }
        Ok(())
    }
}

/// A generated series with its ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub series: TimeSeries,
    pub label: bool,
    pub params: PatternParams,
    pub seed: u64,
}

/// Generates one observation per minute over `span_days`.
pub fn generate(params: &PatternParams, span_days: f64, seed: u64) -> Result<Sample> {
    params.validate()?;
    if span_days.is_nan() || span_days <= 0.0 {
        return Err(PrecogError::InvalidParams("span must be positive".into()));
    }
    let n = (span_days * DAY as f64 / MINUTE as f64).round().max(1.0) as usize;
    let span_h = n as f64 / 60.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hours = |i: usize| i as f64 / 60.0;

    let mut values: Vec<f64> = match *params {
        PatternParams::Linear { base, onset_fraction, slope_per_hour }
        | PatternParams::LinearNoise { base, onset_fraction, slope_per_hour, .. } => {
            let onset = onset_fraction * span_h;
            (0..n)
                .map(|i| base + slope_per_hour * (hours(i) - onset).max(0.0))
                .collect()
        }
        PatternParams::Sawtooth {
            base,
            rise_slope_per_hour,
            drop_fraction,
            tooth_hours_min,
            tooth_hours_max,
            rise_jitter,
            ..
        } => {
            let mut out = Vec::with_capacity(n);
            let mut floor = base;
            while out.len() < n {
                let tooth_h = rng.random_range(tooth_hours_min..=tooth_hours_max);
                let rise = rise_slope_per_hour * (1.0 + rise_jitter * rng.random_range(-1.0..=1.0));
                let len = ((tooth_h * 60.0).round() as usize).max(1);
                for k in 0..len.min(n - out.len()) {
                    out.push(floor + rise * hours(k));
                }
                let peak = floor + rise * tooth_h;
                floor = peak - drop_fraction * (peak - floor);
            }
            out
        }
        PatternParams::FlatNoise { level, .. } => vec![level; n],
        PatternParams::StablePeriodic { level, amplitude, period_hours, phase, .. } => (0..n)
            .map(|i| {
                level + amplitude * (std::f64::consts::TAU * hours(i) / period_hours + phase).sin()
            })
            .collect(),
        PatternParams::PlateauRampHistory {
            base,
            slope_per_hour,
            history_start_hours,
            history_hours,
            recent_hours,
            recent_slope_ratio,
            ..
        } => {
            let recent_start = span_h - recent_hours;
            let history_end = history_start_hours + history_hours;
            (0..n)
                .map(|i| {
                    let h = hours(i);
                    if h >= history_start_hours && h < history_end {
                        base + slope_per_hour * (h - history_start_hours)
                    } else if h >= recent_start {
                        base + recent_slope_ratio * slope_per_hour * (h - recent_start)
                    } else {
                        base
                    }
                })
                .collect()
        }
    };

    let sigma = params.noise_sigma();
    if sigma > 0.0 {
        let normal = Normal::new(0.0, sigma).expect("sigma validated");
        for v in &mut values {
            *v += normal.sample(&mut rng);
        }
    }
    for v in &mut values {
        *v = v.clamp(0.0, 100.0);
    }

    Ok(Sample {
        series: TimeSeries::regular(EPOCH_START, MINUTE as i64, values)?,
        label: params.label(),
        params: params.clone(),
        seed,
    })
}

/// Ranges from which corpus parameters are drawn.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamRanges {
    pub base: (f64, f64),
    /// Leak onset as a fraction of the span.
    pub onset_fraction: (f64, f64),
    /// Days from the end of the series until a linear leak reaches 100%.
    pub exit_days: (f64, f64),
    pub noise_sigma: (f64, f64),
    /// Sawtooth level reached by the end of the series.
    pub sawtooth_end_level: (f64, f64),
    pub sawtooth_drop_fraction: (f64, f64),
    pub sawtooth_tooth_hours: (f64, f64),
    pub sawtooth_rise_jitter: f64,
    pub periodic_amplitude: (f64, f64),
    pub history_hours: (f64, f64),
    pub history_start_hours: (f64, f64),
    /// Final-ramp length relative to the historic one.
    pub recent_length_ratio: (f64, f64),
    pub recent_slope_ratio: (f64, f64),
    /// Historic ramp peak level.
    pub history_peak: (f64, f64),
}

impl Default for ParamRanges {
    fn default() -> Self {
        Self {
            base: (10.0, 40.0),
            onset_fraction: (0.55, 0.75),
            exit_days: (1.5, 4.5),
            noise_sigma: (0.5, 2.0),
            sawtooth_end_level: (75.0, 95.0),
            sawtooth_drop_fraction: (0.3, 0.7),
            sawtooth_tooth_hours: (6.0, 16.0),
            sawtooth_rise_jitter: 0.3,
            periodic_amplitude: (3.0, 10.0),
            history_hours: (44.0, 60.0),
            history_start_hours: (0.0, 6.0),
            recent_length_ratio: (0.2, 0.5),
            recent_slope_ratio: (0.6, 0.9),
            history_peak: (70.0, 90.0),
        }
    }
}

/// How many series to generate per leak pattern and from which ranges.
///
/// Each leak pattern contributes `positives` leaking series and `negatives`
/// non-leaking ones cycling through the normal patterns. Negatives paired
/// with the noiseless `linear` pattern are themselves noiseless.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub patterns: Vec<PatternCount>,
    pub span_days: f64,
    pub ranges: ParamRanges,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternCount {
    pub pattern: Pattern,
    pub positives: usize,
    pub negatives: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        Self::uniform(&Pattern::LEAKS, 30)
    }
}

impl CorpusSpec {
    /// `count` positives and `count` negatives for each listed leak pattern.
    pub fn uniform(patterns: &[Pattern], count: usize) -> Self {
        Self {
            patterns: patterns
                .iter()
                .map(|&pattern| PatternCount {
                    pattern,
                    positives: count,
                    negatives: count,
                })
                .collect(),
            span_days: 5.0,
            ranges: ParamRanges::default(),
        }
    }

    pub fn total(&self) -> usize {
        self.patterns.iter().map(|p| p.positives + p.negatives).sum()
    }
}

/// One corpus member; `group` is the leak pattern row it belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    pub name: String,
    pub group: Pattern,
    pub sample: Sample,
}

fn draw(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if hi > lo {
        rng.random_range(lo..hi)
    } else {
        lo
    }
}

/// Draws parameters for `pattern`; `noisy` selects whether normal patterns get noise.
pub fn draw_params(
    pattern: Pattern,
    ranges: &ParamRanges,
    span_days: f64,
    noisy: bool,
    rng: &mut ChaCha8Rng,
) -> PatternParams {
    let span_h = span_days * 24.0;
    let sigma = if noisy { draw(rng, ranges.noise_sigma) } else { 0.0 };
    match pattern {
        Pattern::Linear | Pattern::LinearNoise => {
            let base = draw(rng, ranges.base);
            let onset_fraction = draw(rng, ranges.onset_fraction);
            let exit_h = draw(rng, ranges.exit_days) * 24.0;
            // Reaches 100% exactly `exit_h` hours after the series ends.
            let slope_per_hour = (100.0 - base) / ((1.0 - onset_fraction) * span_h + exit_h);
            if pattern == Pattern::Linear {
                PatternParams::Linear { base, onset_fraction, slope_per_hour }
            } else {
                PatternParams::LinearNoise {
                    base,
                    onset_fraction,
                    slope_per_hour,
                    noise_sigma: draw(rng, ranges.noise_sigma),
                }
            }
        }
        Pattern::Sawtooth => {
            let base = draw(rng, ranges.base);
            let end = draw(rng, ranges.sawtooth_end_level);
            let drop_fraction = draw(rng, ranges.sawtooth_drop_fraction);
            let net = (end - base) / span_h;
            PatternParams::Sawtooth {
                base,
                rise_slope_per_hour: net / (1.0 - drop_fraction),
                drop_fraction,
                tooth_hours_min: ranges.sawtooth_tooth_hours.0,
                tooth_hours_max: ranges.sawtooth_tooth_hours.1,
                rise_jitter: ranges.sawtooth_rise_jitter,
                noise_sigma: draw(rng, ranges.noise_sigma),
            }
        }
        Pattern::FlatNoise => PatternParams::FlatNoise {
            level: draw(rng, (ranges.base.0, ranges.history_peak.0)),
            noise_sigma: sigma,
        },
        Pattern::StablePeriodic => PatternParams::StablePeriodic {
            level: draw(rng, (ranges.base.0 + 10.0, ranges.history_peak.0)),
            amplitude: draw(rng, ranges.periodic_amplitude),
            period_hours: 24.0,
            phase: draw(rng, (0.0, std::f64::consts::TAU)),
            noise_sigma: sigma,
        },
        Pattern::PlateauRampHistory => {
            let base = draw(rng, ranges.base);
            let history_hours = draw(rng, ranges.history_hours);
            let peak = draw(rng, ranges.history_peak);
            PatternParams::PlateauRampHistory {
                base,
                slope_per_hour: (peak - base) / history_hours,
                history_start_hours: draw(rng, ranges.history_start_hours),
                history_hours,
                recent_hours: history_hours * draw(rng, ranges.recent_length_ratio),
                recent_slope_ratio: draw(rng, ranges.recent_slope_ratio),
                noise_sigma: sigma,
            }
        }
    }
}

/// Builds a deterministic labelled corpus.
pub fn generate_corpus(spec: &CorpusSpec, seed: u64) -> Result<Vec<CorpusEntry>> {
    if spec.total() == 0 {
        return Err(PrecogError::InvalidParams("corpus spec requests no series".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut corpus = Vec::with_capacity(spec.total());
    for row in &spec.patterns {
        let noisy = row.pattern != Pattern::Linear;
        let positives = (0..row.positives).map(|_| row.pattern);
        let negatives = (0..row.negatives).map(|k| Pattern::NORMAL[k % Pattern::NORMAL.len()]);
        for (k, pattern) in positives.chain(negatives).enumerate() {
            let params = if pattern.is_leak() {
                draw_params(pattern, &spec.ranges, spec.span_days, true, &mut rng)
            } else {
                draw_params(pattern, &spec.ranges, spec.span_days, noisy, &mut rng)
            };
            let series_seed = rng.random::<u64>();
            let sample = generate(&params, spec.span_days, series_seed)?;
            let kind = if sample.label { "pos" } else { "neg" };
            corpus.push(CorpusEntry {
                name: format!("{}_{}_{:03}_{}", row.pattern, kind, k, pattern),
                group: row.pattern,
                sample,
            });
        }
    }
    Ok(corpus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_linear_from_the_start_is_strictly_increasing() {
        let span_h = 120.0;
        let params = PatternParams::Linear {
            base: 20.0,
            onset_fraction: 0.0,
            slope_per_hour: 75.0 / span_h,
        };
        let s = generate(&params, 5.0, 0).unwrap();
        assert!(s.label);
        assert_eq!(s.series.len(), 7200);
        assert!(s.series.values().windows(2).all(|w| w[1] > w[0]));
        let last = *s.series.values().last().unwrap();
        assert!((last - 95.0).abs() < 0.02);
    }

    #[test]
    fn same_seed_is_bit_identical() {
        let params = PatternParams::FlatNoise { level: 40.0, noise_sigma: 1.0 };
        let a = generate(&params, 5.0, 7).unwrap();
        let b = generate(&params, 5.0, 7).unwrap();
        assert!(!a.label);
        assert_eq!(a, b);
        let c = generate(&params, 5.0, 8).unwrap();
        assert_ne!(a.series, c.series);
    }

    #[test]
    fn sawtooth_peaks_climb() {
        let params = PatternParams::Sawtooth {
            base: 10.0,
            rise_slope_per_hour: 3.0,
            drop_fraction: 0.6,
            tooth_hours_min: 10.0,
            tooth_hours_max: 10.0,
            rise_jitter: 0.0,
            noise_sigma: 0.0,
        };
        let s = generate(&params, 3.0, 1).unwrap();
        let v = s.series.values();
        let mut peaks = Vec::new();
        let mut start = 0;
        for i in 1..v.len() {
            if v[i] < v[i - 1] {
                peaks.push(v[start..i].iter().copied().fold(f64::MIN, f64::max));
                start = i;
            }
        }
        assert!(peaks.len() >= 5, "{peaks:?}");
        assert!(peaks.windows(2).all(|w| w[0] < w[1]), "{peaks:?}");
        assert!(peaks.iter().all(|&p| p <= 100.0));
    }

    #[test]
    fn plateau_history_has_two_ramps() {
        let params = PatternParams::PlateauRampHistory {
            base: 20.0,
            slope_per_hour: 1.0,
            history_start_hours: 2.0,
            history_hours: 50.0,
            recent_hours: 20.0,
            recent_slope_ratio: 0.8,
            noise_sigma: 0.0,
        };
        let s = generate(&params, 5.0, 3).unwrap();
        let v = s.series.values();
        assert!(!s.label);
        assert!((v[52 * 60 - 1] - 70.0).abs() < 0.05);
        assert_eq!(v[60 * 60], 20.0);
        assert!((v[v.len() - 1] - (20.0 + 0.8 * 20.0)).abs() < 0.05);
    }

    #[test]
    fn invalid_params_are_rejected() {
        let bad = [
            PatternParams::Linear { base: 20.0, onset_fraction: 0.5, slope_per_hour: 0.0 },
            PatternParams::Linear { base: 120.0, onset_fraction: 0.5, slope_per_hour: 1.0 },
            PatternParams::FlatNoise { level: 30.0, noise_sigma: -1.0 },
            PatternParams::Sawtooth {
                base: 10.0,
                rise_slope_per_hour: 1.0,
                drop_fraction: 1.0,
                tooth_hours_min: 5.0,
                tooth_hours_max: 6.0,
                rise_jitter: 0.0,
                noise_sigma: 0.0,
            },
            PatternParams::PlateauRampHistory {
                base: 20.0,
                slope_per_hour: 1.0,
                history_start_hours: 0.0,
                history_hours: 10.0,
                recent_hours: 12.0,
                recent_slope_ratio: 1.0,
                noise_sigma: 0.0,
            },
        ];
        for p in bad {
            assert!(matches!(generate(&p, 5.0, 0), Err(PrecogError::InvalidParams(_))), "{p:?}");
        }
    }

    #[test]
    fn default_corpus_shape() {
        let corpus = generate_corpus(&CorpusSpec::default(), 42).unwrap();
        assert_eq!(corpus.len(), 180);
        assert_eq!(corpus.iter().filter(|e| e.sample.label).count(), 90);
        for leak in Pattern::LEAKS {
            let row: Vec<_> = corpus.iter().filter(|e| e.group == leak).collect();
            assert_eq!(row.len(), 60);
            assert_eq!(row.iter().filter(|e| e.sample.label).count(), 30);
        }
        let mut names: Vec<_> = corpus.iter().map(|e| &e.name).collect();
        names.dedup();
        assert_eq!(names.len(), 180);
    }

    #[test]
    fn empty_corpus_spec_is_rejected() {
        let spec = CorpusSpec::uniform(&Pattern::LEAKS, 0);
        assert!(matches!(generate_corpus(&spec, 1), Err(PrecogError::InvalidParams(_))));
    }

    #[test]
    fn corpus_is_deterministic() {
        let spec = CorpusSpec::uniform(&[Pattern::Sawtooth], 3);
        assert_eq!(generate_corpus(&spec, 5).unwrap(), generate_corpus(&spec, 5).unwrap());
    }

    #[test]
    fn labels_agree_with_projected_growth() {
        let critical_h = 7.0 * 24.0;
        for e in generate_corpus(&CorpusSpec::default(), 42).unwrap() {
            let v = e.sample.series.values();
            assert!(v.iter().all(|x| (0.0..=100.0).contains(x)));
            let end = v[v.len() - 1];
            let projected = end + e.sample.params.generating_slope_per_hour() * critical_h;
            assert_eq!(projected >= 100.0, e.sample.label, "{}: {projected}", e.name);
        }
    }

    #[test]
    fn pattern_names_round_trip() {
        for p in Pattern::ALL {
            assert_eq!(p.name().parse::<Pattern>().unwrap(), p);
        }
        assert!("zigzag".parse::<Pattern>().is_err());
    }
}
