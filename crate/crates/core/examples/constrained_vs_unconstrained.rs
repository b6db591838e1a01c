//! Compare a corpus-only model with one that also uses the broad-POS
//! dictionary meta-tags.
//!
//!     cargo run --example constrained_vs_unconstrained

use codemix_tagger::corpus::{load_dictionary, parse_training_file};
use codemix_tagger::decoder::tag_corpus;
use codemix_tagger::eval::{evaluate, format_percent};
use codemix_tagger::features::Mode;
use codemix_tagger::model::{train, ModelConfig};

fn main() -> codemix_tagger::Result<()> {
    let corpus = parse_training_file(include_str!("../data/synthetic_corpus.tsv"))?;
    let dict = load_dictionary(include_str!("../data/synthetic_dict.tsv"))?;
    let (train_set, held_out) = corpus.split_at(160);

    for (mode, dict) in [(Mode::Constrained, None), (Mode::Unconstrained, Some(dict))] {
        let config = ModelConfig {
            mode,
            ..ModelConfig::default()
        };
        let model = train(train_set, dict, config)?;
        let report = evaluate(held_out, &tag_corpus(&model, held_out)?)?;
        let pronoun = report.per_tag.get("PR_PRP").map_or(0.0, |r| r.accuracy);
        let verb = report.per_tag.get("V_VM").map_or(0.0, |r| r.accuracy);
        println!(
            "{mode:<13} overall {:>7}  PR_PRP {:>7}  V_VM {:>7}  ({} observation types)",
            format_percent(report.overall),
            format_percent(pronoun),
            format_percent(verb),
            model.counts().num_observations()
        );
    }
    Ok(())
}
