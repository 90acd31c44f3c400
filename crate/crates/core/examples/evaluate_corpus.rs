use precog::eval::{evaluate, EvalItem};
use precog::synth::{generate_corpus, CorpusSpec};
use precog::PrecogConfig;

fn main() -> precog::Result<()> {
    let items: Vec<EvalItem> = generate_corpus(&CorpusSpec::default(), 42)?
        .iter()
        .map(EvalItem::from)
        .collect();
    let start = std::time::Instant::now();
    let eval = evaluate(&items, &PrecogConfig::default())?;

    println!("{:<14} {:>9} {:>7} {:>6}", "pattern", "precision", "recall", "f1");
    for (group, s) in &eval.per_group {
        println!("{group:<14} {:>9.3} {:>7.3} {:>6.3}", s.precision, s.recall, s.f1);
    }
    let s = eval.overall;
    println!("{:<14} {:>9.3} {:>7.3} {:>6.3}", "overall", s.precision, s.recall, s.f1);
    println!("{:?} in {:.2?}", s.confusion, start.elapsed());

    let missed: Vec<&str> = eval
        .outcomes
        .iter()
        .filter(|o| o.label != o.predicted)
        .map(|o| o.name.as_str())
        .collect();
    println!("misclassified: {missed:?}");
    Ok(())
}
