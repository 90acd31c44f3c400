use precog::detect_change_points;

fn main() -> precog::Result<()> {
    // Three plateaus separated by abrupt jumps.
    let mut values = vec![20.0; 40];
    values.extend(vec![55.0; 30]);
    values.extend(vec![35.0; 30]);

    let points = detect_change_points(&values, 3.0)?;
    println!("change points: {points:?}");
    assert_eq!(points, vec![0, 40, 70, 99]);

    // A smooth ramp has no abrupt differences, so only the endpoints remain.
    let ramp: Vec<f64> = (0..100).map(|i| i as f64 * 0.5).collect();
    println!("ramp: {:?}", detect_change_points(&ramp, 3.0)?);
    Ok(())
}
