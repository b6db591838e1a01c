//! Suffix-based scores for observations never seen in training.
//!
//!     cargo run --example unknown_words

use codemix_tagger::corpus::{parse_training_file, TaggedToken};
use codemix_tagger::features::make_pseudo_word;
use codemix_tagger::model::{train, ModelConfig};

fn main() -> codemix_tagger::Result<()> {
    let corpus = parse_training_file(include_str!("../data/synthetic_corpus.tsv"))?;
    let model = train(&corpus, None, ModelConfig::default())?;
    let tags = model.tag_set();
    let suffixes = model.suffix_model();
    println!(
        "theta = {:.6}, {} stored suffixes",
        suffixes.theta(),
        suffixes.num_suffixes()
    );

    for (word, lang) in [("korlam", "bn"), ("#monday", "en"), ("dancing", "en")] {
        let key = model.observation(&TaggedToken::untagged(word, lang));
        let pseudo = make_pseudo_word(&key);
        println!("\n{key}");
        for level in suffixes.abstraction_levels(&pseudo) {
            let (best, p) =
                level
                    .distribution
                    .iter()
                    .enumerate()
                    .fold(
                        (0, f64::MIN),
                        |acc, (i, &p)| if p > acc.1 { (i, p) } else { acc },
                    );
            println!(
                "  suffix {:<14} best {:<8} P = {:.4}",
                format!("{:?}", level.suffix.replace('\u{1f}', "|")),
                tags.names()[best],
                p
            );
        }
        let scores = model.emission_scores(&key);
        let mut ranked: Vec<_> = tags
            .real_ids()
            .map(|t| (tags.name(t), scores[t.index()]))
            .collect();
        ranked.sort_by(|a, b| b.1.total_cmp(&a.1));
        let top: Vec<String> = ranked
            .iter()
            .take(3)
            .map(|(t, s)| format!("{t} {s:.3}"))
            .collect();
        println!("  emission scores P(t|s)/P(t): {}", top.join(", "));
    }
    Ok(())
}
