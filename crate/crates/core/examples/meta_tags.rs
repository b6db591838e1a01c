//! How tokens become ⟨word, meta-tag, language-tag⟩ observations.
//!
//!     cargo run --example meta_tags

use codemix_tagger::corpus::{load_dictionary, TaggedToken};
use codemix_tagger::features::{assign_meta_tag, make_observation, make_pseudo_word, Mode};

fn main() -> codemix_tagger::Result<()> {
    let dict = load_dictionary("khabo\tVERB\nami\tPNON\nkintu\tCONJ\n")?;
    let tokens = [
        ("ami", "bn"),
        ("khabo", "bn"),
        ("kintu", "bn"),
        ("#cricket", "en"),
        ("kolkata#rocks", "en"),
        ("#", "univ"),
        ("খাবো", "bn"),
        ("rice", "en"),
    ];

    println!(
        "{:<16} {:<12} {:<12}",
        "word", "constrained", "unconstrained"
    );
    for (word, _) in tokens {
        println!(
            "{:<16} {:<12} {:<12}",
            word,
            assign_meta_tag(word, Mode::Constrained, None),
            assign_meta_tag(word, Mode::Unconstrained, Some(&dict))
        );
    }

    println!();
    for (word, lang) in tokens {
        let token = TaggedToken::untagged(word, lang);
        let key = make_observation(
            &token,
            assign_meta_tag(word, Mode::Unconstrained, Some(&dict)),
        );
        // U+001F shown as `|` for readability.
        let pseudo = make_pseudo_word(&key).as_str().replace('\u{1f}', "|");
        println!("{key:<32} pseudo-word {pseudo}");
    }
    Ok(())
}
