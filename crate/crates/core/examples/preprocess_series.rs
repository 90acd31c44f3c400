//! Resampling and median smoothing of a noisy, irregularly sampled series.
//!
//! Raw samples arrive roughly every 40 seconds with jitter and a few
//! isolated spikes. Preprocessing puts them on a 5-minute grid and removes
//! the spikes with a one-hour trailing median.

use precog::{preprocess, validate_series, PrecogConfig, TimeSeries};

fn main() -> precog::Result<()> {
    let mut t = 1_700_000_000;
    let mut pairs = Vec::new();
    for i in 0..1_000 {
        t += 35 + (i * 7) % 11;
        let spike = if i % 173 == 0 { 40.0 } else { 0.0 };
        pairs.push((t, 45.0 + (i as f64 * 0.05).sin() * 3.0 + spike));
    }
    // One reading slightly over 100% is clamped rather than rejected.
    pairs.push((t + 40, 100.3));

    let validated = validate_series(TimeSeries::from_pairs(pairs)?)?;
    println!("clamped {} value(s)", validated.clamped);

    let cfg = PrecogConfig::default();
    let pre = preprocess(&validated.series, &cfg)?;
    let above = |ts: &TimeSeries| ts.values().iter().filter(|&&v| v > 60.0).count();

    println!(
        "{} raw points -> {} points every {} s",
        validated.series.len(),
        pre.len(),
        cfg.resample_resolution_s
    );
    println!("points above 60%: {} before, {} after", above(&validated.series), above(&pre));
    for (t, v) in pre.iter().take(6) {
        println!("{t},{v:.3}");
    }
    Ok(())
}
