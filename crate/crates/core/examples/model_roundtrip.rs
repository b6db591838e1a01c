//! Save a model to text, load it back and confirm nothing changed.
//!
//!     cargo run --example model_roundtrip [PATH]

use codemix_tagger::corpus::parse_training_file;
use codemix_tagger::model::{read_model, train, write_model, ModelConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let corpus = parse_training_file(include_str!("../data/synthetic_corpus.tsv"))?;
    let model = train(&corpus, None, ModelConfig::default())?;
    let text = write_model(&model);

    let path = std::env::args()
        .nth(1)
        .map(std::path::PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("synthetic.model"));
    std::fs::write(&path, &text)?;
    let loaded = read_model(&std::fs::read_to_string(&path)?)?;

    let mut max_diff = 0.0f64;
    let tags = model.tag_set();
    for a in tags.all_ids() {
        for b in tags.all_ids() {
            for c in tags.all_ids() {
                let d = model.transition_prob_ids(a, b, c) - loaded.transition_prob_ids(a, b, c);
                max_diff = max_diff.max(d.abs());
            }
        }
    }
    println!("wrote {} bytes to {}", text.len(), path.display());
    println!("first lines:");
    for line in text.lines().take(8) {
        println!("  {line}");
    }
    println!("max transition difference after reload: {max_diff:e}");
    println!(
        "re-serialized bytes identical: {}",
        write_model(&loaded) == text
    );
    Ok(())
}
