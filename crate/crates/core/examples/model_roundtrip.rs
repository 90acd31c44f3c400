use precog::{load_model, save_model, train, PrecogConfig, TimeSeries};

fn main() -> precog::Result<()> {
    let cfg = PrecogConfig::default();
    let mut values = Vec::new();
    for per_step in [0.05, 0.1] {
        values.extend(vec![25.0; 48]);
        values.extend((0..240).map(|i| 25.0 + per_step * i as f64));
    }
    let model = train(&TimeSeries::regular(0, 300, values)?, &cfg)?;

    let dir = std::env::temp_dir().join("precog-model-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("vm-17.json");
    save_model(&model, &path)?;
    print!("{}", std::fs::read_to_string(&path)?);

    let loaded = load_model(&path)?;
    assert_eq!(loaded, model);
    println!("reloaded {} trend(s) from {}", loaded.trends.len(), path.display());
    Ok(())
}
