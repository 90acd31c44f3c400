//! Varies the line-fit threshold and the critical time, one at a time.

use precog::eval::{sweep, EvalItem, SweepParam};
use precog::synth::{generate_corpus, CorpusSpec};
use precog::PrecogConfig;

fn main() -> precog::Result<()> {
    let items: Vec<EvalItem> = generate_corpus(&CorpusSpec::default(), 42)?
        .iter()
        .map(EvalItem::from)
        .collect();
    let base = PrecogConfig::default();

    let runs = [
        (SweepParam::R2Min, vec![0.5, 0.65, 0.75, 0.85, 0.95]),
        (SweepParam::CriticalTime, vec![1.0, 2.0, 3.0, 5.0, 7.0, 10.0]),
    ];
    for (param, values) in runs {
        println!("{param}");
        for point in sweep(&items, param, &values, &base)? {
            println!("  {:>5} -> f1 {:.3}", point.value, point.scores.f1);
        }
    }
    Ok(())
}
