use precog::detector::anomalous_segments;
use precog::model::mask_runs;
use precog::synth::{generate_corpus, CorpusSpec, Pattern};
use precog::trendfit::{characterize_range, RunningFit};
use precog::{preprocess, run_pipeline, train, PrecogConfig, TimeSeries, TrendModel};

fn corpus(count: usize, seed: u64) -> Vec<precog::synth::CorpusEntry> {
    let mut spec = CorpusSpec::uniform(&Pattern::LEAKS, count);
    spec.span_days = 4.0;
    generate_corpus(&spec, seed).unwrap()
}

#[test]
fn pipeline_is_deterministic() {
    let cfg = PrecogConfig::default();
    for entry in corpus(3, 11) {
        let a = run_pipeline(&entry.sample.series, &cfg).unwrap();
        let b = run_pipeline(&entry.sample.series, &cfg).unwrap();
        assert_eq!(a.model.to_json().unwrap(), b.model.to_json().unwrap());
        assert_eq!(a.detection, b.detection);
    }
}

#[test]
fn marked_points_come_from_qualifying_segments() {
    let cfg = PrecogConfig::default();
    for entry in corpus(6, 3) {
        let run = run_pipeline(&entry.sample.series, &cfg).unwrap();
        let (_, test) = run.preprocessed.split_at(run.split_index).unwrap();
        let segments = anomalous_segments(&test, &run.model, &cfg).unwrap();
        let mask = &run.detection.mask;
        assert_eq!(mask.len(), test.len());
        assert_eq!(run.detection.is_leaking, !segments.is_empty());

        let mut covered = vec![false; test.len()];
        for s in &segments {
            assert!(s.slope > 0.0);
            assert!(s.exit_time <= cfg.critical_time());
            assert!(s.r2 >= cfg.r2_min);
            assert_eq!(s.end_index, test.len() - 1, "segments are anchored at the end");
            covered[s.start_index..=s.end_index].iter_mut().for_each(|c| *c = true);
        }
        assert_eq!(&covered, mask, "{}", entry.name);
        assert_eq!(
            mask_runs(mask),
            run.detection
                .windows
                .iter()
                .map(|w| (w.start_index, w.end_index))
                .collect::<Vec<_>>()
        );
    }
}

#[test]
fn trained_models_respect_their_invariants() {
    let cfg = PrecogConfig::default();
    let mut nonempty = 0;
    for entry in corpus(5, 8) {
        let pre = preprocess(&entry.sample.series, &cfg).unwrap();
        let model = train(&pre, &cfg).unwrap();
        if model.is_empty() {
            assert_eq!((model.d_max, model.s_max), (0.0, 0.0));
            continue;
        }
        nonempty += 1;
        assert!(model.trends.iter().all(|t| t.slope > 0.0 && t.duration > 0.0));
        assert!(model
            .trends
            .iter()
            .any(|t| t.duration == model.d_max && t.slope == model.s_max));
        assert!(model.d_max <= pre.last_timestamp() as f64 - pre.first_timestamp() as f64);
    }
    assert!(nonempty > 0);
}

#[test]
fn model_with_several_trends_survives_json() {
    let cfg = PrecogConfig::default();
    // Three separated ramps of different steepness.
    let mut values = Vec::new();
    for per_step in [0.05, 0.08, 0.12] {
        values.extend(std::iter::repeat_n(20.0, 60));
        values.extend((0..200).map(|i| 20.0 + per_step * i as f64));
    }
    values.extend(std::iter::repeat_n(20.0, 60));
    let ts = TimeSeries::regular(0, 300, values).unwrap();
    let model = train(&ts, &cfg).unwrap();
    assert!(model.trends.len() >= 3, "{model:?}");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("model.json");
    precog::save_model(&model, &path).unwrap();
    let back = precog::load_model(&path).unwrap();
    assert_eq!(back, model);
    assert!(std::fs::read_to_string(&path).unwrap().ends_with('\n'));
}

#[test]
fn running_fit_agrees_with_batch_characterization() {
    let cfg = PrecogConfig::default();
    for entry in corpus(2, 5) {
        let pre = preprocess(&entry.sample.series, &cfg).unwrap();
        let t0 = pre.first_timestamp();
        let mut fit = RunningFit::new();
        for (i, (t, v)) in pre.iter().enumerate().take(400) {
            fit.push((t - t0) as f64, v);
            if i + 1 >= cfg.min_segment_points && i % 37 == 0 {
                let batch = characterize_range(&pre, 0, i, &cfg).unwrap();
                let tol = 1e-9 * batch.slope.abs().max(1e-9);
                assert!((fit.slope() - batch.slope).abs() <= tol, "{}", entry.name);
                assert!((fit.r2() - batch.r2).abs() <= 1e-9, "i={i} running {} batch {} slope {}", fit.r2(), batch.r2, batch.slope);
            }
        }
    }
}

#[test]
fn empty_model_is_stricter_than_none() {
    // Every series flagged with a trained model is also flagged with no history.
    let cfg = PrecogConfig::default();
    for entry in corpus(4, 21) {
        let run = run_pipeline(&entry.sample.series, &cfg).unwrap();
        if run.is_leaking() {
            let (_, test) = run.preprocessed.split_at(run.split_index).unwrap();
            let empty = TrendModel::empty(cfg.clone());
            assert!(precog::detect(&test, &empty, &cfg).unwrap().is_leaking);
        }
    }
}
