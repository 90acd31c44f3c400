//! Generates the default labelled corpus and summarizes it.

use std::collections::BTreeMap;

use precog::synth::{generate_corpus, CorpusSpec};

fn main() -> precog::Result<()> {
    let spec = CorpusSpec::default();
    let corpus = generate_corpus(&spec, 42)?;

    let mut counts: BTreeMap<(String, String), usize> = BTreeMap::new();
    for entry in &corpus {
        let key = (entry.group.to_string(), entry.sample.params.pattern().to_string());
        *counts.entry(key).or_default() += 1;
    }
    println!("{} series over {} days", corpus.len(), spec.span_days);
    for ((group, pattern), n) in counts {
        println!("{group:<14} {pattern:<22} {n}");
    }

    let first = &corpus[0];
    println!("\n{}: {}", first.name, serde_json::to_string(&first.sample.params).unwrap());
    Ok(())
}
