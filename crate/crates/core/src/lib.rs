//! Memory-leak detection for virtual machines from memory-utilization
//! time series alone.
//!
//! The pipeline resamples and median-smooths raw observations, splits the
//! series at change points found from z-scores of absolute first
//! differences, fits least-squares trend lines between change points, and
//! flags windows whose trend would reach full utilization within a critical
//! time while exceeding every comparable trend seen in the VM's history.
//!
//! ```
//! use precog::{run_pipeline, PrecogConfig, TimeSeries};
//!
//! // Five days of minutely samples: steady at 30% for three days, then leaking.
//! let values = (0..7200)
//!     .map(|m| if m < 4320 { 30.0 } else { 30.0 + (m - 4320) as f64 * 0.015 })
//!     .collect();
//! let raw = TimeSeries::regular(0, 60, values).unwrap();
//! let run = run_pipeline(&raw, &PrecogConfig::default()).unwrap();
//! assert!(run.is_leaking());
//! ```

pub mod bench;
pub mod changepoint;
pub mod cli;
pub mod config;
pub mod csvio;
pub mod detector;
pub mod error;
pub mod eval;
pub mod model;
pub mod preprocess;
pub mod series;
pub mod synth;
pub mod trendfit;

pub use changepoint::detect_change_points;
pub use config::PrecogConfig;
pub use detector::{detect, run_pipeline, train, PipelineRun};
pub use error::{PrecogError, Result};
pub use model::{load_model, save_model, AnomalousWindow, DetectionResult, SavedTrend, TrendModel};
pub use preprocess::{median_smooth, preprocess, resample};
pub use series::{validate_series, TimeSeries, Validated};
pub use trendfit::{characterize, fit_line, FittedTrend, LineFit};
