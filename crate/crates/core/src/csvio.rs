//! CSV and JSON files exchanged with the command line tools.
//!
//! Series files have the header `timestamp,value`. Timestamps are either
//! integer epoch seconds or RFC 3339, decided by the first data row and
//! required to stay consistent for the rest of the file.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use chrono::DateTime;
use serde::{Deserialize, Serialize};

use crate::error::{PrecogError, Result};
use crate::model::DetectionResult;
use crate::series::TimeSeries;
use crate::synth::PatternParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TimeFormat {
    Epoch,
    Rfc3339,
}

fn parse_timestamp(field: &str, format: Option<TimeFormat>) -> Option<(i64, TimeFormat)> {
    let epoch = || field.parse::<i64>().ok().map(|t| (t, TimeFormat::Epoch));
    let rfc = || {
        DateTime::parse_from_rfc3339(field)
            .ok()
            .map(|t| (t.timestamp(), TimeFormat::Rfc3339))
    };
    match format {
        Some(TimeFormat::Epoch) => epoch(),
        Some(TimeFormat::Rfc3339) => rfc(),
        None => epoch().or_else(rfc),
    }
}

/// Parses a `timestamp,value` series from any reader.
pub fn parse_series<R: Read>(reader: R) -> Result<TimeSeries> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let csv_err = |e: csv::Error| {
        let line = e.position().map_or(0, |p| p.line() as usize);
        PrecogError::Parse { line, message: e.to_string() }
    };
    let headers = rdr.headers().map_err(csv_err)?.clone();
    if headers.len() != 2 || &headers[0] != "timestamp" || &headers[1] != "value" {
        return Err(PrecogError::Parse {
            line: 1,
            message: format!("expected header `timestamp,value`, found `{}`", headers.iter().collect::<Vec<_>>().join(",")),
        });
    }

    let mut format = None;
    let mut timestamps = Vec::new();
    let mut values = Vec::new();
    let mut lines = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_err)?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let bad = |message: String| PrecogError::Parse { line, message };
        let (t, f) = parse_timestamp(&record[0], format).ok_or_else(|| {
            bad(match format {
                Some(TimeFormat::Epoch) => format!("`{}` is not epoch seconds like the rows above", &record[0]),
                Some(TimeFormat::Rfc3339) => format!("`{}` is not RFC 3339 like the rows above", &record[0]),
                None => format!("`{}` is neither epoch seconds nor RFC 3339", &record[0]),
            })
        })?;
        format = Some(f);
        let v: f64 = record[1]
            .parse()
            .map_err(|_| bad(format!("`{}` is not a number", &record[1])))?;
        timestamps.push(t);
        values.push(v);
        lines.push(line);
    }

    TimeSeries::new(timestamps, values).map_err(|e| match e {
        PrecogError::NonMonotonicTimestamps { index } => PrecogError::Parse {
            line: lines[index],
            message: "timestamp is not later than the previous row".into(),
        },
        other => other,
    })
}

pub fn read_series_csv(path: impl AsRef<Path>) -> Result<TimeSeries> {
    parse_series(File::open(path)?)
}

pub fn write_series_csv(path: impl AsRef<Path>, ts: &TimeSeries) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "timestamp,value")?;
    for (t, v) in ts.iter() {
        writeln!(w, "{t},{v}")?;
    }
    w.flush()?;
    Ok(())
}

/// Per-point detection output: `timestamp,value,anomalous`.
pub fn write_detection_csv(
    path: impl AsRef<Path>,
    ts: &TimeSeries,
    result: &DetectionResult,
) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "timestamp,value,anomalous")?;
    for ((t, v), &m) in ts.iter().zip(&result.mask) {
        writeln!(w, "{t},{v},{}", u8::from(m))?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowReport {
    pub start_index: usize,
    pub end_index: usize,
    pub start_timestamp: i64,
    pub end_timestamp: i64,
    pub slope_pct_per_s: f64,
    pub exit_time_s: f64,
}

/// JSON summary written next to the per-point CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionReport {
    pub is_leaking: bool,
    pub points: usize,
    pub anomalous_points: usize,
    pub windows: Vec<WindowReport>,
}

impl DetectionReport {
    pub fn new(ts: &TimeSeries, result: &DetectionResult) -> Self {
        let times = ts.timestamps();
        DetectionReport {
            is_leaking: result.is_leaking,
            points: result.mask.len(),
            anomalous_points: result.anomalous_points(),
            windows: result
                .windows
                .iter()
                .map(|w| WindowReport {
                    start_index: w.start_index,
                    end_index: w.end_index,
                    start_timestamp: times[w.start_index],
                    end_timestamp: times[w.end_index],
                    slope_pct_per_s: w.slope,
                    exit_time_s: w.exit_time,
                })
                .collect(),
        }
    }
}

/// Ground truth for one generated file in `labels.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelEntry {
    pub label: bool,
    pub pattern: String,
    /// Leak-pattern row the series belongs to in per-pattern reports.
    pub group: String,
    pub seed: u64,
    pub params: PatternParams,
}

pub type Labels = BTreeMap<String, LabelEntry>;

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_labels(path: impl AsRef<Path>) -> Result<Labels> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epoch_seconds() {
        let ts = parse_series("timestamp,value\n0,50\n60,51.5\n".as_bytes()).unwrap();
        assert_eq!(ts.timestamps(), &[0, 60]);
        assert_eq!(ts.values(), &[50.0, 51.5]);
    }

    #[test]
    fn rfc3339_timestamps() {
        let text = "timestamp,value\n2024-01-01T00:00:00Z,10\n2024-01-01T00:01:00+00:00,11\n";
        let ts = parse_series(text.as_bytes()).unwrap();
        assert_eq!(ts.timestamps(), &[1_704_067_200, 1_704_067_260]);
    }

    #[test]
    fn mixed_formats_are_rejected_with_line() {
        let text = "timestamp,value\n0,10\n2024-01-01T00:01:00Z,11\n";
        let err = parse_series(text.as_bytes()).unwrap_err();
        assert!(matches!(err, PrecogError::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn malformed_value_names_its_line() {
        let err = parse_series("timestamp,value\n0,10\n60,abc\n120,3\n".as_bytes()).unwrap_err();
        assert!(matches!(err, PrecogError::Parse { line: 3, .. }), "{err}");
        assert!(err.to_string().starts_with("line 3:"));
    }

    #[test]
    fn wrong_field_count_names_its_line() {
        let err = parse_series("timestamp,value\n0,10\n60\n".as_bytes()).unwrap_err();
        assert!(matches!(err, PrecogError::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn out_of_order_rows_name_their_line() {
        let err = parse_series("timestamp,value\n0,10\n60,1\n30,2\n".as_bytes()).unwrap_err();
        assert!(matches!(err, PrecogError::Parse { line: 4, .. }), "{err}");
    }

    #[test]
    fn header_is_required() {
        let err = parse_series("time,v\n0,10\n".as_bytes()).unwrap_err();
        assert!(matches!(err, PrecogError::Parse { line: 1, .. }));
    }

    #[test]
    fn header_only_is_empty() {
        assert!(matches!(
            parse_series("timestamp,value\n".as_bytes()),
            Err(PrecogError::EmptySeries)
        ));
    }

    #[test]
    fn written_series_reads_back() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        let ts = TimeSeries::regular(1_700_000_000, 60, vec![1.25, 99.5, 0.1 + 0.2]).unwrap();
        write_series_csv(&path, &ts).unwrap();
        assert_eq!(read_series_csv(&path).unwrap(), ts);
    }
}
