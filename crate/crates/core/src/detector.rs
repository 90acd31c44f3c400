//! Offline trend mining and online leak detection.
//!
//! Training anchors a segment at every change point and grows it rightward
//! across later change points, keeping per anchor the fit that is at least
//! as long and at least as steep as every earlier acceptable fit. Anchors
//! whose best fit would reach the threshold within the critical time become
//! historic trends.
//!
//! Detection fixes the right anchor at the last change point and grows the
//! segment leftward. A segment that would reach the threshold in time is
//! anomalous when it matches or exceeds the historic maxima, or any single
//! historic trend, in both duration and slope.

use crate::changepoint::detect_change_points;
use crate::config::PrecogConfig;
use crate::error::{PrecogError, Result};
use crate::model::{mask_runs, AnomalousWindow, DetectionResult, SavedTrend, TrendModel};
use crate::preprocess::preprocess;
use crate::series::TimeSeries;
use crate::trendfit::{exit_time, FittedTrend, RunningFit};

/// Relative slack when comparing slopes, so segments of one underlying line
/// compare as equal despite rounding in the fit.
pub const SLOPE_RTOL: f64 = 1e-9;

/// `a >= b` for slopes, allowing [`SLOPE_RTOL`] of rounding.
fn slope_at_least(a: f64, b: f64) -> bool {
    a >= b - SLOPE_RTOL * b.abs()
}

fn slopes_equal(a: f64, b: f64) -> bool {
    slope_at_least(a, b) && slope_at_least(b, a)
}

fn ensure_len(ts: &TimeSeries, cfg: &PrecogConfig) -> Result<()> {
    if ts.len() < cfg.min_segment_points {
        return Err(PrecogError::SeriesTooShort {
            len: ts.len(),
            min: cfg.min_segment_points,
        });
    }
    Ok(())
}

fn trend_from(
    fit: &RunningFit,
    start: usize,
    end: usize,
    duration: f64,
    end_x: f64,
    threshold_u: f64,
) -> FittedTrend {
    let slope = fit.slope();
    FittedTrend {
        slope,
        r2: fit.r2(),
        duration,
        exit_time: exit_time(fit.value_at(end_x), slope, threshold_u),
        start_index: start,
        end_index: end,
    }
}

/// Best fitted trend per change-point anchor that qualifies as a historic
/// trend, in anchor order.
pub fn historic_trends(ts: &TimeSeries, cfg: &PrecogConfig) -> Result<Vec<FittedTrend>> {
    cfg.validate()?;
    ensure_len(ts, cfg)?;
    let times = ts.timestamps();
    let values = ts.values();
    let points = detect_change_points(values, cfg.cpd_z_threshold)?;

    let mut saved = Vec::new();
    for (a, &anchor) in points.iter().enumerate() {
        let origin = times[anchor];
        let mut fit = RunningFit::new();
        let mut next = anchor;
        let mut best: Option<FittedTrend> = None;

        for &right in &points[a + 1..] {
            while next <= right {
                fit.push((times[next] - origin) as f64, values[next]);
                next += 1;
            }
            if right - anchor + 1 < cfg.min_segment_points {
                continue;
            }
            let duration = (times[right] - origin) as f64;
            let cand = trend_from(&fit, anchor, right, duration, duration, cfg.threshold_u);
            if cand.r2 < cfg.r2_min {
                continue;
            }
            let (d_b, s_b) = best.map_or((0.0, 0.0), |b| (b.duration, b.slope));
            let dominates = cand.duration >= d_b && slope_at_least(cand.slope, s_b);
            let same = cand.duration == d_b && slopes_equal(cand.slope, s_b);
            if dominates && !same {
                best = Some(cand);
            }
        }

        if let Some(b) = best {
            if b.slope > 0.0 && b.exit_time <= cfg.critical_time() {
                saved.push(b);
            }
        }
    }
    Ok(saved)
}

/// Mines historic trends from a preprocessed training series.
pub fn train(ts: &TimeSeries, cfg: &PrecogConfig) -> Result<TrendModel> {
    let mut model = TrendModel::empty(cfg.clone());
    for t in historic_trends(ts, cfg)? {
        if t.duration >= model.d_max && slope_at_least(t.slope, model.s_max) {
            model.d_max = t.duration;
            model.s_max = t.slope;
        }
        model.trends.push(SavedTrend {
            duration: t.duration,
            slope: t.slope,
        });
    }
    Ok(model)
}

fn check_compatible(model: &TrendModel, cfg: &PrecogConfig) -> Result<()> {
    let trained = &model.config_echo;
    if trained.threshold_u != cfg.threshold_u {
        return Err(PrecogError::ConfigMismatch {
            field: "threshold_u",
            model: trained.threshold_u.to_string(),
            config: cfg.threshold_u.to_string(),
        });
    }
    if trained.resample_resolution_s != cfg.resample_resolution_s {
        return Err(PrecogError::ConfigMismatch {
            field: "resample_resolution_s",
            model: trained.resample_resolution_s.to_string(),
            config: cfg.resample_resolution_s.to_string(),
        });
    }
    Ok(())
}

fn exceeds_history(trend: &FittedTrend, model: &TrendModel) -> bool {
    let covers = |duration: f64, slope: f64| {
        trend.duration >= duration && slope_at_least(trend.slope, slope)
    };
    covers(model.d_max, model.s_max) || model.trends.iter().any(|t| covers(t.duration, t.slope))
}

/// Segments ending at the last change point that would be marked anomalous,
/// ordered from the shortest to the longest.
pub fn anomalous_segments(
    ts: &TimeSeries,
    model: &TrendModel,
    cfg: &PrecogConfig,
) -> Result<Vec<FittedTrend>> {
    cfg.validate()?;
    check_compatible(model, cfg)?;
    ensure_len(ts, cfg)?;
    let times = ts.timestamps();
    let values = ts.values();
    let points = detect_change_points(values, cfg.cpd_z_threshold)?;
    let (&right, lefts) = points.split_last().expect("change points include both endpoints");
    let origin = times[right];

    let mut fit = RunningFit::new();
    // next point (moving leftward) to add; `None` once index 0 is in.
    let mut next = Some(right);
    let mut marked = Vec::new();
    for &left in lefts.iter().rev() {
        while let Some(i) = next.filter(|&i| i >= left) {
            fit.push((times[i] - origin) as f64, values[i]);
            next = i.checked_sub(1);
        }
        if right - left + 1 < cfg.min_segment_points {
            continue;
        }
        let duration = (origin - times[left]) as f64;
        let trend = trend_from(&fit, left, right, duration, 0.0, cfg.threshold_u);
        let leaking = trend.slope > 0.0
            && trend.exit_time <= cfg.critical_time()
            && trend.r2 >= cfg.r2_min
            && exceeds_history(&trend, model);
        if leaking {
            marked.push(trend);
        }
    }
    Ok(marked)
}

/// Flags anomalous windows in a preprocessed series against a trained model.
pub fn detect(ts: &TimeSeries, model: &TrendModel, cfg: &PrecogConfig) -> Result<DetectionResult> {
    let marked = anomalous_segments(ts, model, cfg)?;
    let mut mask = vec![false; ts.len()];
    for seg in &marked {
        mask[seg.start_index..=seg.end_index].fill(true);
    }
    let windows = mask_runs(&mask)
        .into_iter()
        .map(|(start, end)| {
            let widest = marked
                .iter()
                .filter(|s| s.start_index >= start && s.end_index <= end)
                .min_by_key(|s| s.start_index)
                .expect("every run is covered by a marked segment");
            AnomalousWindow {
                start_index: start,
                end_index: end,
                slope: widest.slope,
                exit_time: widest.exit_time,
            }
        })
        .collect::<Vec<_>>();
    Ok(DetectionResult {
        is_leaking: !windows.is_empty(),
        mask,
        windows,
    })
}

/// Everything produced by one preprocess → split → train → detect pass.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineRun {
    pub preprocessed: TimeSeries,
    /// First index of the detection part of `preprocessed`.
    pub split_index: usize,
    pub model: TrendModel,
    pub detection: DetectionResult,
}

impl PipelineRun {
    pub fn is_leaking(&self) -> bool {
        self.detection.is_leaking
    }
}

/// Preprocesses a raw series once, trains on the leading `train_fraction`
/// and runs detection on the remainder.
pub fn run_pipeline(raw: &TimeSeries, cfg: &PrecogConfig) -> Result<PipelineRun> {
    cfg.validate()?;
    let pre = preprocess(raw, cfg)?;
    let n = pre.len();
    let split = (cfg.train_fraction * n as f64).floor() as usize;
    let min = cfg.min_segment_points;
    if split < min || n - split < min {
        return Err(PrecogError::SeriesTooShort {
            len: n,
            min: (min as f64 / cfg.train_fraction.min(1.0 - cfg.train_fraction)).ceil() as usize,
        });
    }
    let (train_part, test_part) = pre.split_at(split)?;
    let model = train(&train_part, cfg)?;
    let detection = detect(&test_part, &model, cfg)?;
    Ok(PipelineRun {
        preprocessed: pre,
        split_index: split,
        model,
        detection,
    })
}
