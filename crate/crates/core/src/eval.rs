//! Series-level scoring and parameter sweeps.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{PrecogConfig, DAY};
use crate::detector::run_pipeline;
use crate::error::{PrecogError, Result};
use crate::series::TimeSeries;
use crate::synth::CorpusEntry;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub true_positives: usize,
    pub false_positives: usize,
    pub true_negatives: usize,
    pub false_negatives: usize,
}

impl Confusion {
    pub fn record(&mut self, predicted: bool, label: bool) {
        match (predicted, label) {
            (true, true) => self.true_positives += 1,
            (true, false) => self.false_positives += 1,
            (false, false) => self.true_negatives += 1,
            (false, true) => self.false_negatives += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.true_positives + self.false_positives + self.true_negatives + self.false_negatives
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub confusion: Confusion,
}

impl From<Confusion> for Scores {
    fn from(c: Confusion) -> Self {
        let ratio = |num: usize, den: usize| if den == 0 { 0.0 } else { num as f64 / den as f64 };
        let precision = ratio(c.true_positives, c.true_positives + c.false_positives);
        let recall = ratio(c.true_positives, c.true_positives + c.false_negatives);
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        Scores { precision, recall, f1, confusion: c }
    }
}

/// Precision, recall and F1 over `(predicted, label)` pairs.
///
/// Undefined ratios (no predicted or no actual positives) are reported as 0.
pub fn score_corpus(results: &[(bool, bool)]) -> Result<Scores> {
    if results.is_empty() {
        return Err(PrecogError::EmptyInput);
    }
    let mut c = Confusion::default();
    for &(predicted, label) in results {
        c.record(predicted, label);
    }
    Ok(c.into())
}

/// A labelled series to evaluate. `group` is the table row it is reported under.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalItem {
    pub name: String,
    pub group: String,
    pub pattern: String,
    pub label: bool,
    pub series: TimeSeries,
}

impl From<&CorpusEntry> for EvalItem {
    fn from(e: &CorpusEntry) -> Self {
        EvalItem {
            name: e.name.clone(),
            group: e.group.to_string(),
            pattern: e.sample.params.pattern().to_string(),
            label: e.sample.label,
            series: e.sample.series.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub name: String,
    pub group: String,
    pub pattern: String,
    pub label: bool,
    pub predicted: bool,
    pub trends: usize,
    pub anomalous_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub overall: Scores,
    pub per_group: BTreeMap<String, Scores>,
    pub outcomes: Vec<Outcome>,
}

/// Runs the full pipeline on every item (in parallel) and scores the verdicts.
pub fn evaluate(items: &[EvalItem], cfg: &PrecogConfig) -> Result<Evaluation> {
    if items.is_empty() {
        return Err(PrecogError::EmptyInput);
    }
    cfg.validate()?;
    let outcomes = items
        .par_iter()
        .map(|item| {
            let run = run_pipeline(&item.series, cfg)?;
            Ok(Outcome {
                name: item.name.clone(),
                group: item.group.clone(),
                pattern: item.pattern.clone(),
                label: item.label,
                predicted: run.is_leaking(),
                trends: run.model.trends.len(),
                anomalous_points: run.detection.anomalous_points(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut overall = Confusion::default();
    let mut groups: BTreeMap<String, Confusion> = BTreeMap::new();
    for o in &outcomes {
        overall.record(o.predicted, o.label);
        groups.entry(o.group.clone()).or_default().record(o.predicted, o.label);
    }
    Ok(Evaluation {
        overall: overall.into(),
        per_group: groups.into_iter().map(|(g, c)| (g, c.into())).collect(),
        outcomes,
    })
}

/// Configuration field varied by [`sweep`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    R2Min,
    /// Values are given in days.
    CriticalTime,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::R2Min => "r2_min",
            SweepParam::CriticalTime => "critical_time",
        }
    }

    pub fn apply(self, base: &PrecogConfig, value: f64) -> PrecogConfig {
        let mut cfg = base.clone();
        match self {
            SweepParam::R2Min => cfg.r2_min = value,
            SweepParam::CriticalTime => cfg.critical_time_s = (value * DAY as f64).round() as u64,
        }
        cfg
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParam {
    type Err = PrecogError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "r2_min" => Ok(SweepParam::R2Min),
            "critical_time" => Ok(SweepParam::CriticalTime),
            other => Err(PrecogError::InvalidParams(format!(
                "unknown sweep parameter `{other}` (expected r2_min or critical_time)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub value: f64,
    pub scores: Scores,
}

/// Re-evaluates the corpus once per value of `param`, all else fixed at `base`.
pub fn sweep(
    items: &[EvalItem],
    param: SweepParam,
    values: &[f64],
    base: &PrecogConfig,
) -> Result<Vec<SweepPoint>> {
    if values.len() < 2 {
        return Err(PrecogError::InvalidParams(
            "a sweep needs at least two values".into(),
        ));
    }
    values
        .iter()
        .map(|&value| {
            let cfg = param.apply(base, value);
            Ok(SweepPoint {
                value,
                scores: evaluate(items, &cfg)?.overall,
            })
        })
        .collect()
}
