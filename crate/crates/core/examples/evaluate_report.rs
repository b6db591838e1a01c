//! Train on 160 sentences, evaluate on the remaining 40 and print the
//! per-tag accuracy table next to the majority-tag baseline.
//!
//!     cargo run --example evaluate_report

use codemix_tagger::corpus::parse_training_file;
use codemix_tagger::decoder::tag_corpus;
use codemix_tagger::eval::{
    evaluate, format_percent, majority_baseline, render_report, render_tsv,
};
use codemix_tagger::model::{train, ModelConfig};

fn main() -> codemix_tagger::Result<()> {
    let corpus = parse_training_file(include_str!("../data/synthetic_corpus.tsv"))?;
    let (train_set, held_out) = corpus.split_at(160);
    let model = train(train_set, None, ModelConfig::default())?;
    let predicted = tag_corpus(&model, held_out)?;

    let report = evaluate(held_out, &predicted)?;
    let baseline = majority_baseline(train_set, held_out)?;
    print!("{}", render_report(&report, true));
    println!(
        "\nmajority-tag baseline: {}",
        format_percent(baseline.overall)
    );
    println!("\n{}", render_tsv(&report));
    Ok(())
}
