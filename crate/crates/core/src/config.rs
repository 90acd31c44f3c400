use serde::{Deserialize, Serialize};

use crate::error::{PrecogError, Result};

pub const MINUTE: u64 = 60;
pub const HOUR: u64 = 60 * MINUTE;
pub const DAY: u64 = 24 * HOUR;

/// Tunable thresholds and processing parameters. All durations are whole seconds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrecogConfig {
    /// Utilization ceiling in percent.
    pub threshold_u: f64,
    /// Horizon within which a projected trend must reach `threshold_u`.
    pub critical_time_s: u64,
    pub resample_resolution_s: u64,
    pub smoothing_window_s: u64,
    /// Minimum R² for a fitted line to count as a trend.
    pub r2_min: f64,
    pub cpd_z_threshold: f64,
    /// Smallest segment, in preprocessed points, that is ever fitted.
    pub min_segment_points: usize,
    pub train_fraction: f64,
}

impl Default for PrecogConfig {
    fn default() -> Self {
        Self {
            threshold_u: 100.0,
            critical_time_s: 7 * DAY,
            resample_resolution_s: 5 * MINUTE,
            smoothing_window_s: HOUR,
            r2_min: 0.75,
            cpd_z_threshold: 3.0,
            min_segment_points: 5,
            train_fraction: 0.65,
        }
    }
}

impl PrecogConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(PrecogError::InvalidConfig(msg));
        if !(self.threshold_u > 0.0 && self.threshold_u <= 100.0) {
            return fail(format!("threshold_u must be in (0, 100], got {}", self.threshold_u));
        }
        if self.critical_time_s == 0 {
            return fail("critical_time must be positive".into());
        }
        if self.resample_resolution_s == 0 {
            return fail("resample_resolution must be positive".into());
        }
        if self.smoothing_window_s < self.resample_resolution_s {
            return fail(format!(
                "smoothing_window ({} s) must be at least resample_resolution ({} s)",
                self.smoothing_window_s, self.resample_resolution_s
            ));
        }
        if !(self.r2_min > 0.0 && self.r2_min <= 1.0) {
            return fail(format!("r2_min must be in (0, 1], got {}", self.r2_min));
        }
        if !(self.cpd_z_threshold > 0.0 && self.cpd_z_threshold.is_finite()) {
            return fail(format!("cpd_z_threshold must be positive, got {}", self.cpd_z_threshold));
        }
        if self.min_segment_points < 3 {
            return fail(format!(
                "min_segment_points must be at least 3, got {}",
                self.min_segment_points
            ));
        }
        if !(self.train_fraction > 0.0 && self.train_fraction < 1.0) {
            return fail(format!("train_fraction must be in (0, 1), got {}", self.train_fraction));
        }
        Ok(())
    }

    pub fn critical_time(&self) -> f64 {
        self.critical_time_s as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = PrecogConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.critical_time_s, 604_800);
        assert_eq!(cfg.resample_resolution_s, 300);
        assert_eq!(cfg.smoothing_window_s, 3600);
    }

    #[test]
    fn rejects_out_of_range_fields() {
        let bad = [
            PrecogConfig { threshold_u: 0.0, ..Default::default() },
            PrecogConfig { threshold_u: 101.0, ..Default::default() },
            PrecogConfig { critical_time_s: 0, ..Default::default() },
            PrecogConfig { resample_resolution_s: 0, ..Default::default() },
            PrecogConfig { smoothing_window_s: 60, ..Default::default() },
            PrecogConfig { r2_min: 0.0, ..Default::default() },
            PrecogConfig { r2_min: 1.5, ..Default::default() },
            PrecogConfig { cpd_z_threshold: 0.0, ..Default::default() },
            PrecogConfig { min_segment_points: 2, ..Default::default() },
            PrecogConfig { train_fraction: 1.0, ..Default::default() },
        ];
        for cfg in bad {
            assert!(matches!(cfg.validate(), Err(PrecogError::InvalidConfig(_))), "{cfg:?}");
        }
    }
}
