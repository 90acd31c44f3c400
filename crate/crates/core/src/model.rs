//! Training output, detection output and the model file format.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::PrecogConfig;
use crate::error::{PrecogError, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// A historic trend mined during training.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SavedTrend {
    #[serde(rename = "duration_s")]
    pub duration: f64,
    #[serde(rename = "slope_pct_per_s")]
    pub slope: f64,
}

/// Historic trends of one VM plus the running maxima used as the first detection gate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrendModel {
    pub schema_version: u32,
    #[serde(rename = "config")]
    pub config_echo: PrecogConfig,
    pub trends: Vec<SavedTrend>,
    #[serde(rename = "d_max_s")]
    pub d_max: f64,
    #[serde(rename = "s_max_pct_per_s")]
    pub s_max: f64,
}

impl TrendModel {
    pub fn empty(config: PrecogConfig) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            config_echo: config,
            trends: Vec::new(),
            d_max: 0.0,
            s_max: 0.0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.trends.is_empty()
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Header {
            schema_version: u32,
        }
        let header: Header = serde_json::from_str(text)?;
        if header.schema_version != SCHEMA_VERSION {
            return Err(PrecogError::SchemaMismatch {
                found: header.schema_version,
                expected: SCHEMA_VERSION,
            });
        }
        Ok(serde_json::from_str(text)?)
    }
}

pub fn save_model(model: &TrendModel, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, model.to_json()?)?;
    Ok(())
}

pub fn load_model(path: impl AsRef<Path>) -> Result<TrendModel> {
    TrendModel::from_json(&fs::read_to_string(path)?)
}

/// A maximal run of anomalous points, summarized by the widest marked segment in it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnomalousWindow {
    pub start_index: usize,
    pub end_index: usize,
    #[serde(rename = "slope_pct_per_s")]
    pub slope: f64,
    #[serde(rename = "exit_time_s")]
    pub exit_time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionResult {
    pub mask: Vec<bool>,
    pub windows: Vec<AnomalousWindow>,
    pub is_leaking: bool,
}

impl DetectionResult {
    pub fn anomalous_points(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }
}

/// Maximal runs of `true` in `mask` as inclusive `(start, end)` pairs.
pub fn mask_runs(mask: &[bool]) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut start = None;
    for (i, &m) in mask.iter().enumerate() {
        match (m, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                runs.push((s, i - 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        runs.push((s, mask.len() - 1));
    }
    runs
}
