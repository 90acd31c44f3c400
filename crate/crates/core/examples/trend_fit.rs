//! Fitting a segment and projecting when it will exhaust memory.

use precog::config::HOUR;
use precog::trendfit::exit_time;
use precog::{characterize, fit_line, PrecogConfig, TimeSeries};

fn main() -> precog::Result<()> {
    // 12 hours at 5-minute resolution, rising 2% per hour from 50%.
    let values: Vec<f64> = (0..=144).map(|i| 50.0 + 2.0 * i as f64 / 12.0).collect();
    let segment = TimeSeries::regular(0, 300, values)?;

    let line = fit_line(&segment)?;
    println!(
        "slope {:.3} %/h, intercept {:.2}%, r2 {:.3}",
        line.slope * HOUR as f64,
        line.intercept,
        line.r2
    );

    let trend = characterize(&segment, &PrecogConfig::default())?;
    println!(
        "duration {:.1} h, reaches 100% in {:.1} h",
        trend.duration / HOUR as f64,
        trend.exit_time / HOUR as f64
    );

    // Already at the threshold, or not rising at all.
    assert_eq!(exit_time(100.0, line.slope, 100.0), 0.0);
    assert_eq!(exit_time(60.0, -1e-4, 100.0), f64::INFINITY);
    Ok(())
}
