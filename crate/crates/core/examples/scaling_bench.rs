//! Training and prediction time versus series length.
//!
//! Run with `--release`; debug builds are several times slower.

use precog::bench::bench_scaling;

fn main() -> precog::Result<()> {
    let sizes = [1_000, 3_000, 10_000, 30_000, 100_000];
    println!("{:>8} {:>10} {:>11}", "points", "train ms", "predict ms");
    for row in bench_scaling(&sizes, 3, 42)? {
        println!("{:>8} {:>10.2} {:>11.3}", row.size, row.train_ms, row.predict_ms);
    }
    Ok(())
}
