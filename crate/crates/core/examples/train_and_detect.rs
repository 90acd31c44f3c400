//! Train on a VM's history, then check its most recent data for a leak.

use precog::config::HOUR;
use precog::synth::EPOCH_START;
use precog::{detect, preprocess, train, PrecogConfig, TimeSeries};

fn minutely(hours: usize, f: impl Fn(f64) -> f64) -> precog::Result<TimeSeries> {
    TimeSeries::regular(EPOCH_START, 60, (0..hours * 60).map(|m| f(m as f64 / 60.0)).collect())
}

fn main() -> precog::Result<()> {
    let cfg = PrecogConfig::default();

    // History: a daily cycle, then a restart followed by a 30-hour climb,
    // then another restart that released the memory.
    let history = minutely(96, |h| {
        if (24.0..54.0).contains(&h) {
            20.0 + (h - 24.0) * 1.2
        } else {
            35.0 + 4.0 * (h * std::f64::consts::TAU / 24.0).sin()
        }
    })?;
    let model = train(&preprocess(&history, &cfg)?, &cfg)?;
    println!("learned {} trend(s)", model.trends.len());
    for t in &model.trends {
        println!("  {:.1} h at {:.2} %/h", t.duration / HOUR as f64, t.slope * HOUR as f64);
    }

    // Recent data: a steeper climb than anything seen before.
    let recent = minutely(36, |h| 40.0 + 1.5 * h)?;
    let result = detect(&preprocess(&recent, &cfg)?, &model, &cfg)?;
    println!("leaking: {}", result.is_leaking);
    for w in &result.windows {
        println!(
            "  points {}..={} rising {:.2} %/h, full in {:.1} h",
            w.start_index,
            w.end_index,
            w.slope * HOUR as f64,
            w.exit_time / HOUR as f64
        );
    }
    Ok(())
}
