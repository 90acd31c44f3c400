//! Reading monitoring exports and writing per-point detection output.

use precog::csvio::{parse_series, write_detection_csv, write_json, DetectionReport};
use precog::{detect, preprocess, PrecogConfig, TrendModel};

const EXPORT: &str = "\
timestamp,value
2024-03-01T00:00:00Z,61.0
2024-03-01T00:10:00Z,61.5
2024-03-01T00:20:00Z,62.1
";

fn main() -> precog::Result<()> {
    // RFC 3339 and epoch-second timestamps are both accepted.
    let small = parse_series(EXPORT.as_bytes())?;
    println!("parsed {} rows starting at {}", small.len(), small.first_timestamp());

    let bad = parse_series("timestamp,value\n1709251200,61\n1709251260,n/a\n".as_bytes());
    println!("malformed input: {}", bad.unwrap_err());

    let mut text = String::from("timestamp,value\n");
    for m in 0..24 * 60 {
        text.push_str(&format!("{},{:.2}\n", 1_709_251_200 + m * 60, 50.0 + m as f64 / 40.0));
    }
    let cfg = PrecogConfig::default();
    let series = preprocess(&parse_series(text.as_bytes())?, &cfg)?;
    let result = detect(&series, &TrendModel::empty(cfg.clone()), &cfg)?;

    let dir = std::env::temp_dir().join("precog-csv-example");
    std::fs::create_dir_all(&dir)?;
    write_detection_csv(dir.join("detection.csv"), &series, &result)?;
    write_json(dir.join("detection.json"), &DetectionReport::new(&series, &result))?;
    println!("wrote detection.csv and detection.json to {}", dir.display());
    Ok(())
}
