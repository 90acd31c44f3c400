//! `precog` command line: generate, train, detect, evaluate and bench.
//!
//! Exit codes: 0 success (no leak), 2 leak detected, 64 usage, 65 bad data,
//! 74 I/O failure, 78 configuration problem.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bench::bench_scaling;
use crate::config::{PrecogConfig, DAY, MINUTE};
use crate::csvio::{
    read_labels, read_series_csv, write_detection_csv, write_json, write_series_csv,
    DetectionReport, LabelEntry, Labels,
};
use crate::detector::{detect, train};
use crate::error::{PrecogError, Result};
use crate::eval::{evaluate, sweep, EvalItem, SweepParam};
use crate::model::{load_model, save_model};
use crate::preprocess::preprocess;
use crate::series::{validate_series, TimeSeries};
use crate::synth::{draw_params, generate, generate_corpus, CorpusSpec, Pattern, ParamRanges};

pub const EXIT_OK: i32 = 0;
pub const EXIT_LEAK: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_IO: i32 = 74;
pub const EXIT_CONFIG: i32 = 78;

#[derive(Debug, Parser)]
#[command(name = "precog", version, about = "Memory-leak detection from VM memory utilization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write synthetic series as CSV files plus a labels.json sidecar.
    Generate(GenerateArgs),
    /// Mine historic trends from a series and save them as a model.
    Train(TrainArgs),
    /// Flag anomalous windows in a series against a saved model.
    Detect(DetectArgs),
    /// Score the detector on a labelled corpus directory.
    Evaluate(EvaluateArgs),
    /// Time training and detection on growing series.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, PartialEq)]
pub enum PatternChoice {
    All,
    One(Pattern),
}

fn parse_pattern_choice(s: &str) -> std::result::Result<PatternChoice, String> {
    if s == "all" {
        return Ok(PatternChoice::All);
    }
    s.parse().map(PatternChoice::One).map_err(|_| {
        let names: Vec<_> = Pattern::ALL.iter().map(|p| p.name()).collect();
        format!("expected `all` or one of {}", names.join(", "))
    })
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Pattern name, or `all` for the labelled corpus (COUNT positives and
    /// COUNT negatives per leak pattern).
    #[arg(long, value_parser = parse_pattern_choice)]
    pub pattern: PatternChoice,
    #[arg(long, default_value_t = 30)]
    pub count: usize,
    #[arg(long, default_value_t = 5.0)]
    pub days: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub out_dir: PathBuf,
}

/// Overrides for the detector configuration; unset flags keep the defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    #[arg(long)]
    pub threshold_u: Option<f64>,
    #[arg(long)]
    pub critical_days: Option<f64>,
    #[arg(long)]
    pub resample_mins: Option<f64>,
    #[arg(long)]
    pub smooth_mins: Option<f64>,
    #[arg(long)]
    pub r2_min: Option<f64>,
    #[arg(long)]
    pub z_threshold: Option<f64>,
    #[arg(long)]
    pub train_fraction: Option<f64>,
    #[arg(long)]
    pub min_segment_points: Option<usize>,
}

impl ConfigArgs {
    pub fn to_config(&self) -> Result<PrecogConfig> {
        let secs = |v: f64, unit: u64| (v * unit as f64).round() as u64;
        let mut cfg = PrecogConfig::default();
        if let Some(v) = self.threshold_u {
            cfg.threshold_u = v;
        }
        if let Some(v) = self.critical_days {
            cfg.critical_time_s = secs(v, DAY);
        }
        if let Some(v) = self.resample_mins {
            cfg.resample_resolution_s = secs(v, MINUTE);
        }
        if let Some(v) = self.smooth_mins {
            cfg.smoothing_window_s = secs(v, MINUTE);
        }
        if let Some(v) = self.r2_min {
            cfg.r2_min = v;
        }
        if let Some(v) = self.z_threshold {
            cfg.cpd_z_threshold = v;
        }
        if let Some(v) = self.train_fraction {
            cfg.train_fraction = v;
        }
        if let Some(v) = self.min_segment_points {
            cfg.min_segment_points = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub model_out: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub model: PathBuf,
    /// Per-point CSV path; the window summary goes to the same path with a `.json` extension.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub values: Vec<f64>,
}

fn parse_sweep(s: &str) -> std::result::Result<SweepSpec, String> {
    let (name, list) = s.split_once('=').ok_or("expected PARAM=V1,V2,...")?;
    let param = name.trim().parse::<SweepParam>().map_err(|e| e.to_string())?;
    let values = list
        .split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| format!("`{v}` is not a number")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if values.len() < 2 {
        return Err("a sweep needs at least two values".into());
    }
    Ok(SweepSpec { param, values })
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Directory written by `precog generate` (CSV files and labels.json).
    #[arg(long)]
    pub corpus_dir: PathBuf,
    /// Where results.csv and summary.json go; defaults to the corpus directory.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Re-run for each value, e.g. `r2_min=0.5,0.75,0.95` or `critical_time=1,3,7` (days).
    #[arg(long, value_parser = parse_sweep)]
    pub sweep: Option<SweepSpec>,
    #[command(flatten)]
    pub config: ConfigArgs,
}

fn parse_size(s: &str) -> std::result::Result<usize, String> {
    s.trim()
        .replace('_', "")
        .parse()
        .map_err(|_| format!("`{s}` is not a size"))
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_parser = parse_size, value_delimiter = ',', default_value = "1000,10000,100000")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// CSV output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Maps an error to the process exit code it should produce.
pub fn exit_code(err: &PrecogError) -> i32 {
    use PrecogError::*;
    match err {
        Io(_) => EXIT_IO,
        InvalidConfig(_) | ConfigMismatch { .. } => EXIT_CONFIG,
        InvalidParams(_) | InvalidSizes(_) => EXIT_USAGE,
        EmptySeries
        | NonMonotonicTimestamps { .. }
        | LengthMismatch { .. }
        | ValueOutOfRange { .. }
        | SeriesTooShort { .. }
        | SegmentTooShort { .. }
        | SchemaMismatch { .. }
        | EmptyInput
        | Parse { .. }
        | Json(_) => EXIT_DATA,
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn execute(command: &Command) -> Result<i32> {
    match command {
        Command::Generate(a) => cmd_generate(a),
        Command::Train(a) => cmd_train(a),
        Command::Detect(a) => cmd_detect(a),
        Command::Evaluate(a) => cmd_evaluate(a),
        Command::Bench(a) => cmd_bench(a),
    }
}

fn load_input(path: &Path, cfg: &PrecogConfig) -> Result<TimeSeries> {
    let validated = validate_series(read_series_csv(path)?)?;
    if validated.clamped > 0 {
        eprintln!(
            "warning: {}: clamped {} value(s) into [0, 100]",
            path.display(),
            validated.clamped
        );
    }
    preprocess(&validated.series, cfg)
}

pub fn cmd_generate(a: &GenerateArgs) -> Result<i32> {
    if a.count == 0 {
        return Err(PrecogError::InvalidParams("count must be positive".into()));
    }
    let samples: Vec<(String, String, crate::synth::Sample)> = match a.pattern {
        PatternChoice::All => {
            let mut spec = CorpusSpec::uniform(&Pattern::LEAKS, a.count);
            spec.span_days = a.days;
            generate_corpus(&spec, a.seed)?
                .into_iter()
                .map(|e| (e.name, e.group.to_string(), e.sample))
                .collect()
        }
        PatternChoice::One(pattern) => {
            use rand::{RngExt, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(a.seed);
            let ranges = ParamRanges::default();
            (0..a.count)
                .map(|k| {
                    let params = draw_params(pattern, &ranges, a.days, true, &mut rng);
                    let sample = generate(&params, a.days, rng.random())?;
                    Ok((format!("{pattern}_{k:03}"), pattern.to_string(), sample))
                })
                .collect::<Result<_>>()?
        }
    };

    fs::create_dir_all(&a.out_dir)?;
    let mut labels = Labels::new();
    for (name, group, sample) in samples {
        let file = format!("{name}.csv");
        write_series_csv(a.out_dir.join(&file), &sample.series)?;
        labels.insert(
            file,
            LabelEntry {
                label: sample.label,
                pattern: sample.params.pattern().to_string(),
                group,
                seed: sample.seed,
                params: sample.params,
            },
        );
    }
    write_json(a.out_dir.join("labels.json"), &labels)?;
    println!("wrote {} series to {}", labels.len(), a.out_dir.display());
    Ok(EXIT_OK)
}

pub fn cmd_train(a: &TrainArgs) -> Result<i32> {
    let cfg = a.config.to_config()?;
    let series = load_input(&a.input, &cfg)?;
    let model = train(&series, &cfg)?;
    save_model(&model, &a.model_out)?;
    println!(
        "saved {} trend(s) to {} (d_max {:.0} s, s_max {:.3e} %/s)",
        model.trends.len(),
        a.model_out.display(),
        model.d_max,
        model.s_max
    );
    Ok(EXIT_OK)
}

pub fn cmd_detect(a: &DetectArgs) -> Result<i32> {
    let cfg = a.config.to_config()?;
    let model = load_model(&a.model)?;
    let series = load_input(&a.input, &cfg)?;
    let result = detect(&series, &model, &cfg)?;
    write_detection_csv(&a.out, &series, &result)?;
    write_json(a.out.with_extension("json"), &DetectionReport::new(&series, &result))?;
    println!(
        "{}: {} ({} of {} points anomalous)",
        a.input.display(),
        if result.is_leaking { "LEAK" } else { "ok" },
        result.anomalous_points(),
        result.mask.len()
    );
    Ok(if result.is_leaking { EXIT_LEAK } else { EXIT_OK })
}

pub fn load_corpus_dir(dir: &Path) -> Result<Vec<EvalItem>> {
    let labels = read_labels(dir.join("labels.json"))?;
    labels
        .into_iter()
        .map(|(file, entry)| {
            let validated = validate_series(read_series_csv(dir.join(&file))?)?;
            Ok(EvalItem {
                name: file.trim_end_matches(".csv").to_string(),
                group: entry.group,
                pattern: entry.pattern,
                label: entry.label,
                series: validated.series,
            })
        })
        .collect()
}

pub fn cmd_evaluate(a: &EvaluateArgs) -> Result<i32> {
    let cfg = a.config.to_config()?;
    let items = load_corpus_dir(&a.corpus_dir)?;
    let out_dir = a.out_dir.clone().unwrap_or_else(|| a.corpus_dir.clone());
    fs::create_dir_all(&out_dir)?;

    let evaluation = evaluate(&items, &cfg)?;
    let mut w = csv::Writer::from_path(out_dir.join("results.csv")).map_err(csv_io)?;
    for o in &evaluation.outcomes {
        w.serialize(o).map_err(csv_io)?;
    }
    w.flush()?;

    let sweep_points = match &a.sweep {
        Some(s) => {
            let points = sweep(&items, s.param, &s.values, &cfg)?;
            let mut w = csv::Writer::from_path(out_dir.join("sweep.csv")).map_err(csv_io)?;
            w.write_record(["param", "value", "precision", "recall", "f1"]).map_err(csv_io)?;
            for p in &points {
                w.write_record([
                    s.param.name().to_string(),
                    p.value.to_string(),
                    p.scores.precision.to_string(),
                    p.scores.recall.to_string(),
                    p.scores.f1.to_string(),
                ])
                .map_err(csv_io)?;
            }
            w.flush()?;
            Some((s.param, points))
        }
        None => None,
    };

    let summary = serde_json::json!({
        "config": cfg,
        "series": items.len(),
        "overall": evaluation.overall,
        "per_group": evaluation.per_group,
        "sweep": sweep_points.as_ref().map(|(param, points)| serde_json::json!({
            "param": param,
            "points": points,
        })),
    });
    write_json(out_dir.join("summary.json"), &summary)?;

    let mut out = std::io::stdout().lock();
    writeln!(out, "{:<16} {:>9} {:>9} {:>9}", "group", "precision", "recall", "f1")?;
    for (group, s) in &evaluation.per_group {
        writeln!(out, "{group:<16} {:>9.3} {:>9.3} {:>9.3}", s.precision, s.recall, s.f1)?;
    }
    let s = evaluation.overall;
    writeln!(out, "{:<16} {:>9.3} {:>9.3} {:>9.3}", "overall", s.precision, s.recall, s.f1)?;
    if let Some((param, points)) = &sweep_points {
        for p in points {
            writeln!(out, "{param}={} f1={:.3}", p.value, p.scores.f1)?;
        }
    }
    Ok(EXIT_OK)
}

fn csv_io(e: csv::Error) -> PrecogError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => PrecogError::Io(io),
        other => PrecogError::Io(std::io::Error::other(format!("{other:?}"))),
    }
}

pub fn cmd_bench(a: &BenchArgs) -> Result<i32> {
    let rows = bench_scaling(&a.sizes, a.reps, a.seed)?;
    let mut text = String::from("size,train_ms,predict_ms\n");
    for r in &rows {
        text.push_str(&format!("{},{:.3},{:.3}\n", r.size, r.train_ms, r.predict_ms));
    }
    match &a.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_flags_override_defaults() {
        let args = ConfigArgs {
            critical_days: Some(3.0),
            resample_mins: Some(10.0),
            smooth_mins: Some(30.0),
            r2_min: Some(0.9),
            ..Default::default()
        };
        let cfg = args.to_config().unwrap();
        assert_eq!(cfg.critical_time_s, 3 * 86_400);
        assert_eq!(cfg.resample_resolution_s, 600);
        assert_eq!(cfg.smoothing_window_s, 1800);
        assert_eq!(cfg.r2_min, 0.9);
        assert_eq!(cfg.threshold_u, 100.0);
    }

    #[test]
    fn invalid_flag_values_are_config_errors() {
        let args = ConfigArgs { r2_min: Some(1.5), ..Default::default() };
        let err = args.to_config().unwrap_err();
        assert_eq!(exit_code(&err), EXIT_CONFIG);
    }

    #[test]
    fn sweep_spec_parsing() {
        let s = parse_sweep("r2_min=0.5, 0.75,0.95").unwrap();
        assert_eq!(s.param, SweepParam::R2Min);
        assert_eq!(s.values, vec![0.5, 0.75, 0.95]);
        assert!(parse_sweep("r2_min=0.5").is_err());
        assert!(parse_sweep("bogus=1,2").is_err());
        assert!(parse_sweep("r2_min").is_err());
    }

    #[test]
    fn command_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn sizes_accept_underscores() {
        let cli = Cli::try_parse_from(["precog", "bench", "--sizes", "10_000,100000"]).unwrap();
        match cli.command {
            Command::Bench(b) => assert_eq!(b.sizes, vec![10_000, 100_000]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_pattern_is_rejected_by_the_parser() {
        let err = Cli::try_parse_from(["precog", "generate", "--pattern", "zigzag", "--out-dir", "x"])
            .unwrap_err();
        assert_eq!(err.kind(), clap::error::ErrorKind::ValueValidation);
    }
}
