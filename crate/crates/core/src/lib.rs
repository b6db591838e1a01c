//! Part-of-speech tagging for code-mixed social media text with a trigram
//! hidden Markov model.
//!
//! The observed symbol for each token is the triplet
//! ⟨word, meta-tag, language-tag⟩. Meta-tags mark hash-tag position (`HB`,
//! `HE`) or, in unconstrained mode, a broad POS category from a dictionary
//! (`VERB`, `PNON`, `CONJ`); everything else is `YYYY`.
//!
//! * [`corpus`] reads and writes the tab-separated data files.
//! * [`features`] assigns meta-tags and builds observation keys.
//! * [`model`] trains the HMM: deleted-interpolation transitions, observation
//!   counts and suffix statistics for unseen observations.
//! * [`decoder`] runs trigram Viterbi (plus an exhaustive reference decoder).
//! * [`eval`] computes overall and per-tag accuracy.
//! * [`cli`] is the `train` / `tag` / `eval` command line.
//!
//! ```
//! use codemix_tagger::corpus::{parse_test_file, parse_training_file};
//! use codemix_tagger::decoder::tag_sentence;
//! use codemix_tagger::model::{train, ModelConfig};
//!
//! let gold = parse_training_file("ami\tbn\tPR_PRP\nkhabo\tbn\tV_VM\n\ni\ten\tPR_PRP\neat\ten\tV_VM\n").unwrap();
//! let model = train(&gold, None, ModelConfig::default()).unwrap();
//! let raw = parse_test_file("ami\tbn\nkhabo\tbn\n").unwrap();
//! let tagged = tag_sentence(&model, &raw[0]).unwrap();
//! assert_eq!(tagged.tokens()[1].pos_tag.as_deref(), Some("V_VM"));
//! ```

pub mod cli;
pub mod corpus;
pub mod decoder;
mod error;
pub mod eval;
pub mod features;
pub mod model;

pub use error::{Error, Result};
