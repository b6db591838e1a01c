//! Train on the bundled corpus and tag a few unseen code-mixed sentences.
//!
//!     cargo run --example train_and_tag

use codemix_tagger::corpus::{parse_test_file, parse_training_file, write_tagged_file};
use codemix_tagger::decoder::tag_corpus;
use codemix_tagger::model::{train, ModelConfig};

const RAW: &str = "\
ami\tbn
kal\tbn
match\ten
dekhbo\tbn
!\tuniv

this\ten
movie\ten
khub\tbn
boring\ten
chilo\tbn
#fail\ten
";

fn main() -> codemix_tagger::Result<()> {
    let corpus = parse_training_file(include_str!("../data/synthetic_corpus.tsv"))?;
    let model = train(&corpus, None, ModelConfig::default())?;
    let l = model.lambdas();
    println!(
        "{} sentences, {} tags, lambdas {:.4} {:.4} {:.4}",
        corpus.len(),
        model.tag_set().len(),
        l.unigram,
        l.bigram,
        l.trigram
    );

    let tagged = tag_corpus(&model, &parse_test_file(RAW)?)?;
    print!("{}", write_tagged_file(&tagged)?);
    Ok(())
}
