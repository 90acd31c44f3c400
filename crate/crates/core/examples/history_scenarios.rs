//! How the learned history changes the verdict on the same recent data.
//!
//! - a climb longer than any historic one with the same slope is flagged;
//! - with no history at all, any fast climb is flagged;
//! - replaying the start of a longer historic climb is not flagged.

use precog::{detect, preprocess, train, PrecogConfig, TimeSeries, TrendModel};

/// Minutely series: flat for six hours, then rising `per_hour` for `hours`,
/// optionally released back to the base level for a further six hours.
fn climb(hours: f64, per_hour: f64, released: bool) -> TimeSeries {
    let rise = (hours * 60.0) as usize;
    let mut values = vec![20.0; 360];
    values.extend((1..=rise).map(|m| 20.0 + per_hour * m as f64 / 60.0));
    if released {
        values.extend(vec![20.0; 360]);
    }
    TimeSeries::regular(0, 60, values).unwrap()
}

fn main() -> precog::Result<()> {
    let cfg = PrecogConfig::default();
    let learn = |ts: &TimeSeries| train(&preprocess(ts, &cfg)?, &cfg);
    let flagged = |ts: &TimeSeries, model: &TrendModel| -> precog::Result<bool> {
        Ok(detect(&preprocess(ts, &cfg)?, model, &cfg)?.is_leaking)
    };

    let short_history = learn(&climb(24.0, 1.0, true))?;
    println!("longer than history:   {}", flagged(&climb(36.0, 1.0, false), &short_history)?);

    let none = TrendModel::empty(cfg.clone());
    println!("no history:            {}", flagged(&climb(30.0, 1.0, false), &none)?);

    let long_history = learn(&climb(48.0, 1.0, true))?;
    println!("replay of history:     {}", flagged(&climb(24.0, 1.0, false), &long_history)?);
    Ok(())
}
