//! Meta-tags, observation triplets and suffix pseudo-words.

use std::fmt;
use std::str::FromStr;

use crate::corpus::{BroadPos, Dictionary, TaggedToken};

/// Joins the components of a [`PseudoWord`].
pub const PSEUDO_WORD_SEPARATOR: char = '\u{1f}';

/// Whether external resources (the broad-POS dictionary) may be used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    Constrained,
    Unconstrained,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Constrained => "constrained",
            Mode::Unconstrained => "unconstrained",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "constrained" => Ok(Mode::Constrained),
            "unconstrained" => Ok(Mode::Unconstrained),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

/// Auxiliary per-token label combined with the word and language tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MetaTag {
    /// `YYYY`: no hash mark, not in the dictionary.
    Default,
    /// `HB`: token starts with `#`.
    HashBegin,
    /// `HE`: `#` somewhere after the first character.
    HashEmbedded,
    Verb,
    Pronoun,
    Conjunction,
}

impl MetaTag {
    pub const ALL: [MetaTag; 6] = [
        MetaTag::Default,
        MetaTag::HashBegin,
        MetaTag::HashEmbedded,
        MetaTag::Verb,
        MetaTag::Pronoun,
        MetaTag::Conjunction,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MetaTag::Default => "YYYY",
            MetaTag::HashBegin => "HB",
            MetaTag::HashEmbedded => "HE",
            MetaTag::Verb => "VERB",
            MetaTag::Pronoun => "PNON",
            MetaTag::Conjunction => "CONJ",
        }
    }
}

impl From<BroadPos> for MetaTag {
    fn from(pos: BroadPos) -> Self {
        match pos {
            BroadPos::Verb => MetaTag::Verb,
            BroadPos::Pronoun => MetaTag::Pronoun,
            BroadPos::Conjunction => MetaTag::Conjunction,
        }
    }
}

impl fmt::Display for MetaTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for MetaTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        MetaTag::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown meta-tag {s:?}"))
    }
}

/// Assigns the meta-tag of a word.
///
/// Hash rules come first: a leading `#` gives `HB`, a `#` anywhere else gives
/// `HE`. Only then, and only in unconstrained mode, is the dictionary
/// consulted (exact, case-sensitive match). Everything else is `YYYY`.
/// The dictionary is ignored in constrained mode.
pub fn assign_meta_tag(word: &str, mode: Mode, dict: Option<&Dictionary>) -> MetaTag {
    if word.starts_with('#') {
        return MetaTag::HashBegin;
    }
    if word.contains('#') {
        return MetaTag::HashEmbedded;
    }
    if mode == Mode::Unconstrained {
        if let Some(pos) = dict.and_then(|d| d.get(word)) {
            return pos.into();
        }
    }
    MetaTag::Default
}

/// The ⟨word, meta-tag, language-tag⟩ symbol emitted by the HMM.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObservationKey {
    pub word: String,
    pub meta: MetaTag,
    pub lang: String,
}

impl ObservationKey {
    pub fn new(word: impl Into<String>, meta: MetaTag, lang: impl Into<String>) -> Self {
        ObservationKey {
            word: word.into(),
            meta,
            lang: lang.into(),
        }
    }
}

impl fmt::Display for ObservationKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&format!("<{}, {}, {}>", self.word, self.meta, self.lang))
    }
}

pub fn make_observation(token: &TaggedToken, meta: MetaTag) -> ObservationKey {
    ObservationKey::new(token.word.as_str(), meta, token.lang_tag.as_str())
}

/// Word, language tag and meta-tag name joined by U+001F. Only its suffixes
/// are used, for estimating emissions of unseen observations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PseudoWord {
    text: String,
    char_len: usize,
}

impl PseudoWord {
    pub fn as_str(&self) -> &str {
        &self.text
    }

    /// Length in characters.
    pub fn char_len(&self) -> usize {
        self.char_len
    }

    /// The last `len` characters (the whole word when `len` exceeds it).
    pub fn suffix(&self, len: usize) -> &str {
        if len >= self.char_len {
            return &self.text;
        }
        let start = self
            .text
            .char_indices()
            .nth(self.char_len - len)
            .map_or(self.text.len(), |(idx, _)| idx);
        &self.text[start..]
    }

    /// Suffixes of length `0..=min(max_len, char_len)`, shortest first.
    pub fn suffixes(&self, max_len: usize) -> impl Iterator<Item = &str> + '_ {
        let starts: Vec<usize> = self
            .text
            .char_indices()
            .map(|(idx, _)| idx)
            .rev()
            .take(max_len)
            .collect();
        std::iter::once(&self.text[self.text.len()..])
            .chain(starts.into_iter().map(|s| &self.text[s..]))
    }

    /// Splits back into (word, lang, meta-name).
    pub fn components(&self) -> Option<(&str, &str, &str)> {
        let mut parts = self.text.rsplitn(3, PSEUDO_WORD_SEPARATOR);
        let meta = parts.next()?;
        let lang = parts.next()?;
        let word = parts.next()?;
        Some((word, lang, meta))
    }
}

impl fmt::Display for PseudoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

pub fn make_pseudo_word(key: &ObservationKey) -> PseudoWord {
    let meta = key.meta.as_str();
    let mut text = String::with_capacity(key.word.len() + key.lang.len() + meta.len() + 2);
    text.push_str(&key.word);
    text.push(PSEUDO_WORD_SEPARATOR);
    text.push_str(&key.lang);
    text.push(PSEUDO_WORD_SEPARATOR);
    text.push_str(meta);
    let char_len = text.chars().count();
    PseudoWord { text, char_len }
}
