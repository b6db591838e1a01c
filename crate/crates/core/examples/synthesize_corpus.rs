//! Generates the bundled synthetic Bengali-English code-mixed corpus and its
//! broad-POS dictionary.
//!
//!     cargo run --example synthesize_corpus -- [OUT_DIR] [SENTENCES]
//!
//! Defaults: `crates/core/data`, 200 sentences. The seed is fixed, so the
//! output is reproducible.

use std::path::PathBuf;

use codemix_tagger::corpus::{write_tagged_file, BroadPos, Sentence, TaggedToken};
use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 2015;

struct Lexicon {
    tag: &'static str,
    bn: &'static [&'static str],
    en: &'static [&'static str],
}

const LEXICON: &[Lexicon] = &[
    Lexicon {
        tag: "PR_PRP",
        bn: &[
            "ami", "tumi", "se", "amra", "amar", "tomar", "ora", "or", "tomra",
        ],
        en: &["i", "you", "we", "he", "she", "my", "they", "me"],
    },
    Lexicon {
        tag: "V_VM",
        bn: &[
            "khabo",
            "jabo",
            "korbo",
            "dekhbo",
            "bhalobashi",
            "korchi",
            "jani",
            "khelbo",
            "gelam",
            "dekhlam",
            "porbo",
            "ashbo",
            "elo",
            "khacchi",
            "boli",
        ],
        en: &[
            "love", "go", "eat", "like", "watch", "play", "miss", "need", "want", "enjoy", "know",
            "see",
        ],
    },
    Lexicon {
        tag: "V_VAUX",
        bn: &["ache", "chilo", "hobe", "hoy", "geche"],
        en: &["is", "am", "are", "was", "will", "do"],
    },
    Lexicon {
        tag: "N_NN",
        bn: &[
            "bhat", "khela", "cha", "boi", "bari", "din", "gaan", "bondhu", "mach", "kaaj", "mon",
            "ratri", "pujo",
        ],
        en: &[
            "match", "movie", "party", "exam", "college", "phone", "weekend", "song", "friend",
            "time", "food", "life",
        ],
    },
    Lexicon {
        tag: "N_NNP",
        bn: &["kolkata", "rahul", "dhaka", "priya", "durga"],
        en: &["facebook", "sachin", "messi", "india", "google"],
    },
    Lexicon {
        tag: "JJ",
        bn: &[
            "bhalo", "darun", "khub", "sundor", "notun", "boro", "chhoto",
        ],
        en: &[
            "good", "awesome", "nice", "great", "happy", "bad", "new", "boring",
        ],
    },
    Lexicon {
        tag: "RB",
        bn: &["ekhon", "aaj", "khub", "kal", "abar", "taratari"],
        en: &["now", "today", "really", "so", "very", "again", "tomorrow"],
    },
    Lexicon {
        tag: "CC_CCD",
        bn: &["ar", "kintu", "tai", "ba"],
        en: &["and", "but", "so", "or"],
    },
    Lexicon {
        tag: "PSP",
        bn: &["theke", "jonno", "sathe", "kache", "moddhe"],
        en: &["with", "for", "in", "like", "at", "to"],
    },
    Lexicon {
        tag: "DM_DMD",
        bn: &["ei", "oi", "sei"],
        en: &["this", "that"],
    },
    Lexicon {
        tag: "QT_QTF",
        bn: &["onek", "kichu", "sob"],
        en: &["many", "some", "lots", "all"],
    },
    Lexicon {
        tag: "RP_NEG",
        bn: &["na", "nai"],
        en: &["not", "never"],
    },
];

const PUNCT: &[&str] = &[".", "!", "?", "...", ","];
const EMOTICONS: &[&str] = &[":)", ":D", "<3", ":("];

// `#` marks a hashtag slot; `PUNC` and `E` are language-independent.
const TEMPLATES: &[&[&str]] = &[
    &["PR_PRP", "N_NN", "V_VM", "PUNC"],
    &["PR_PRP", "V_VAUX", "JJ", "PUNC"],
    &["PR_PRP", "V_VM", "DM_DMD", "N_NN", "PUNC"],
    &["DM_DMD", "N_NN", "JJ", "V_VAUX", "PUNC"],
    &["RB", "PR_PRP", "N_NN", "PSP", "V_VM", "E"],
    &[
        "PR_PRP", "QT_QTF", "N_NN", "V_VM", "CC_CCD", "PR_PRP", "RP_NEG", "V_VM", "PUNC",
    ],
    &["N_NNP", "PSP", "PR_PRP", "V_VM", "#"],
    &["JJ", "N_NN", "PUNC", "#"],
    &["PR_PRP", "N_NN", "V_VM", "RP_NEG", "PUNC"],
    &["PR_PRP", "JJ", "N_NN", "V_VM", "V_VAUX", "E"],
    &["RB", "N_NNP", "V_VM", "CC_CCD", "PR_PRP", "V_VM", "PUNC"],
    &["PR_PRP", "RB", "JJ", "V_VAUX", "E", "#"],
];

fn zipf_pick<'a, R: Rng>(rng: &mut R, words: &[&'a str]) -> &'a str {
    let weights: Vec<f64> = (0..words.len()).map(|r| 1.0 / (r as f64 + 1.0)).collect();
    words[WeightedIndex::new(&weights).unwrap().sample(rng)]
}

fn lexicon(tag: &str) -> &'static Lexicon {
    LEXICON
        .iter()
        .find(|l| l.tag == tag)
        .expect("template uses a known tag")
}

fn hashtag<R: Rng>(rng: &mut R) -> TaggedToken {
    let (tag, base) = match rng.gen_range(0..3) {
        0 => ("N_NN", zipf_pick(rng, lexicon("N_NN").en)),
        1 => ("JJ", zipf_pick(rng, lexicon("JJ").en)),
        _ => ("N_NNP", zipf_pick(rng, lexicon("N_NNP").en)),
    };
    // A few hashtags are glued onto the previous word: `kolkata#rocks`.
    let word = if rng.gen_bool(0.2) {
        format!("{}#{base}", zipf_pick(rng, lexicon("N_NNP").bn))
    } else {
        format!("#{base}")
    };
    TaggedToken::tagged(word, "en", tag)
}

/// Social-media spelling: stretched final letters (`khubbb`), shouting and
/// leading capitals. Produces the rare and unseen forms that the suffix
/// statistics are meant to handle.
fn noisy<R: Rng>(rng: &mut R, word: &str) -> String {
    match rng.gen_range(0..100) {
        0..=7 => {
            let last = word.chars().last().unwrap();
            let extra: String = std::iter::repeat_n(last, rng.gen_range(1..=3)).collect();
            format!("{word}{extra}")
        }
        8..=10 => word.to_uppercase(),
        11..=14 => {
            let mut chars = word.chars();
            let first = chars.next().unwrap();
            first.to_uppercase().chain(chars).collect()
        }
        _ => word.to_owned(),
    }
}

fn sentence<R: Rng>(rng: &mut R) -> Sentence {
    let template = TEMPLATES.choose(rng).unwrap();
    let matrix_bn = rng.gen_bool(0.65);
    let tokens = template
        .iter()
        .map(|&slot| match slot {
            "PUNC" => TaggedToken::tagged(*PUNCT.choose(rng).unwrap(), "univ", "RD_PUNC"),
            "E" => TaggedToken::tagged(*EMOTICONS.choose(rng).unwrap(), "univ", "E"),
            "#" => hashtag(rng),
            tag => {
                let bn = matrix_bn ^ rng.gen_bool(0.3);
                let lex = lexicon(tag);
                let (lang, words) = if bn { ("bn", lex.bn) } else { ("en", lex.en) };
                let base = zipf_pick(rng, words);
                let word = noisy(rng, base);
                TaggedToken::tagged(word, lang, tag)
            }
        })
        .collect();
    Sentence::new(tokens).unwrap()
}

fn dictionary<R: Rng>(rng: &mut R) -> String {
    let mut out = String::new();
    for (tag, pos) in [
        ("V_VM", BroadPos::Verb),
        ("V_VAUX", BroadPos::Verb),
        ("PR_PRP", BroadPos::Pronoun),
        ("CC_CCD", BroadPos::Conjunction),
    ] {
        let lex = lexicon(tag);
        for word in lex.bn.iter().chain(lex.en) {
            // Incomplete on purpose, like any real word list.
            if rng.gen_bool(0.75) {
                out.push_str(&format!("{word}\t{}\n", pos.as_str()));
            }
        }
    }
    out
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let out_dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data"));
    let count: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(200);

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let sentences: Vec<Sentence> = (0..count).map(|_| sentence(&mut rng)).collect();
    let dict = dictionary(&mut rng);

    std::fs::create_dir_all(&out_dir)?;
    let corpus_path = out_dir.join("synthetic_corpus.tsv");
    let dict_path = out_dir.join("synthetic_dict.tsv");
    std::fs::write(&corpus_path, write_tagged_file(&sentences)?)?;
    std::fs::write(&dict_path, dict)?;
    let tokens: usize = sentences.iter().map(Sentence::len).sum();
    println!(
        "wrote {count} sentences ({tokens} tokens) to {}",
        corpus_path.display()
    );
    println!("wrote dictionary to {}", dict_path.display());
    Ok(())
}
