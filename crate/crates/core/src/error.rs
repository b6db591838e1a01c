use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while reading data, training, decoding or
/// evaluating.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input is not valid UTF-8 (byte offset {0})")]
    Encoding(usize),

    #[error("malformed line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },

    #[error("token {token} of sentence {sentence} has no POS tag")]
    MissingTag { sentence: usize, token: usize },

    #[error("line {line}: unknown broad POS category {value:?} (expected VERB, PNON or CONJ)")]
    UnknownBroadPos { line: usize, value: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("training corpus is empty")]
    EmptyCorpus,

    #[error("POS tag {0:?} is reserved for sentence boundaries")]
    ReservedTag(String),

    #[error("unknown tag {0:?}")]
    UnknownTag(String),

    #[error("observation was seen in training; use the emission table")]
    KnownObservation,

    #[error("cannot decode an empty observation sequence")]
    EmptyInput,

    #[error("brute-force decoding limited to {max_len} tokens and {max_tags} tags (got {len} tokens, {tags} tags)")]
    TooLarge {
        len: usize,
        tags: usize,
        max_len: usize,
        max_tags: usize,
    },

    #[error("model has an empty tag set")]
    EmptyTagSet,

    #[error("gold and predicted data disagree at sentence index {0} (0-based)")]
    Misaligned(usize),

    #[error("model file line {line}: {reason}")]
    ModelFormat { line: usize, reason: String },
}

impl Error {
    pub(crate) fn malformed(line: usize, reason: impl Into<String>) -> Self {
        Error::MalformedLine {
            line,
            reason: reason.into(),
        }
    }

    pub(crate) fn model_format(line: usize, reason: impl Into<String>) -> Self {
        Error::ModelFormat {
            line,
            reason: reason.into(),
        }
    }
}
