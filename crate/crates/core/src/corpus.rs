//! Reading and writing the tab-separated corpus files and the broad-POS
//! dictionary.
//!
//! Training data has one `word<TAB>lang<TAB>pos` line per token, raw test
//! data has `word<TAB>lang`. Sentences are separated by one or more blank
//! lines. Tokens are taken byte-for-byte: no case folding, trimming or
//! normalization is applied.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::features::PSEUDO_WORD_SEPARATOR;

/// One token with its language tag and, for gold data, its POS tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TaggedToken {
    pub word: String,
    pub lang_tag: String,
    pub pos_tag: Option<String>,
}

impl TaggedToken {
    pub fn tagged(
        word: impl Into<String>,
        lang: impl Into<String>,
        pos: impl Into<String>,
    ) -> Self {
        TaggedToken {
            word: word.into(),
            lang_tag: lang.into(),
            pos_tag: Some(pos.into()),
        }
    }

    pub fn untagged(word: impl Into<String>, lang: impl Into<String>) -> Self {
        TaggedToken {
            word: word.into(),
            lang_tag: lang.into(),
            pos_tag: None,
        }
    }
}

/// A non-empty sequence of tokens.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sentence {
    tokens: Vec<TaggedToken>,
}

impl Sentence {
    /// Returns `None` for an empty token list.
    pub fn new(tokens: Vec<TaggedToken>) -> Option<Self> {
        if tokens.is_empty() {
            None
        } else {
            Some(Sentence { tokens })
        }
    }

    pub fn tokens(&self) -> &[TaggedToken] {
        &self.tokens
    }

    pub fn tokens_mut(&mut self) -> &mut [TaggedToken] {
        &mut self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_tokens(self) -> Vec<TaggedToken> {
        self.tokens
    }

    pub fn iter(&self) -> std::slice::Iter<'_, TaggedToken> {
        self.tokens.iter()
    }
}

impl<'a> IntoIterator for &'a Sentence {
    type Item = &'a TaggedToken;
    type IntoIter = std::slice::Iter<'a, TaggedToken>;

    fn into_iter(self) -> Self::IntoIter {
        self.tokens.iter()
    }
}

/// Broad POS category of a dictionary entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BroadPos {
    Verb,
    Pronoun,
    Conjunction,
}

impl BroadPos {
    pub fn as_str(self) -> &'static str {
        match self {
            BroadPos::Verb => "VERB",
            BroadPos::Pronoun => "PNON",
            BroadPos::Conjunction => "CONJ",
        }
    }
}

impl fmt::Display for BroadPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BroadPos {
    type Err = ();

    fn from_str(s: &str) -> std::result::Result<Self, ()> {
        match s {
            "VERB" => Ok(BroadPos::Verb),
            "PNON" => Ok(BroadPos::Pronoun),
            "CONJ" => Ok(BroadPos::Conjunction),
            _ => Err(()),
        }
    }
}

/// A later dictionary line that replaced an earlier entry for the same word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DuplicateEntry {
    pub line: usize,
    pub word: String,
    pub previous: BroadPos,
    pub replacement: BroadPos,
}

impl fmt::Display for DuplicateEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}: duplicate dictionary entry {:?} ({} replaced by {})",
            self.line, self.word, self.previous, self.replacement
        )
    }
}

/// Exact-match lookup table from word to broad POS category.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Dictionary {
    entries: HashMap<String, BroadPos>,
    duplicates: Vec<DuplicateEntry>,
}

impl Dictionary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts an entry, returning the category it replaced.
    pub fn insert(&mut self, word: impl Into<String>, pos: BroadPos) -> Option<BroadPos> {
        self.entries.insert(word.into(), pos)
    }

    pub fn get(&self, word: &str) -> Option<BroadPos> {
        self.entries.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries sorted by word.
    pub fn sorted_entries(&self) -> Vec<(&str, BroadPos)> {
        let mut entries: Vec<_> = self.entries.iter().map(|(w, p)| (w.as_str(), *p)).collect();
        entries.sort_unstable();
        entries
    }

    /// Duplicate entries encountered while loading.
    pub fn warnings(&self) -> &[DuplicateEntry] {
        &self.duplicates
    }
}

impl FromIterator<(String, BroadPos)> for Dictionary {
    fn from_iter<I: IntoIterator<Item = (String, BroadPos)>>(iter: I) -> Self {
        Dictionary {
            entries: iter.into_iter().collect(),
            duplicates: Vec::new(),
        }
    }
}

fn decode(input: &[u8]) -> Result<&str> {
    std::str::from_utf8(input).map_err(|e| Error::Encoding(e.valid_up_to()))
}

/// Yields `(line_no, line)` with 1-based numbering and any trailing CR removed.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split('\n')
        .enumerate()
        .map(|(idx, line)| (idx + 1, line.strip_suffix('\r').unwrap_or(line)))
}

fn is_blank(line: &str) -> bool {
    line.chars().all(char::is_whitespace)
}

fn split_fields(line_no: usize, line: &str, expected: usize) -> Result<Vec<&str>> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != expected {
        return Err(Error::malformed(
            line_no,
            format!(
                "expected {} tab-separated fields, found {}",
                expected,
                fields.len()
            ),
        ));
    }
    if let Some(idx) = fields.iter().position(|f| f.is_empty()) {
        return Err(Error::malformed(
            line_no,
            format!("field {} is empty", idx + 1),
        ));
    }
    Ok(fields)
}

fn parse_sentences(input: &[u8], with_pos: bool) -> Result<Vec<Sentence>> {
    let text = decode(input)?;
    let expected = if with_pos { 3 } else { 2 };
    let mut sentences = Vec::new();
    let mut current = Vec::new();

    for (line_no, line) in lines(text) {
        if is_blank(line) {
            if let Some(sentence) = Sentence::new(std::mem::take(&mut current)) {
                sentences.push(sentence);
            }
            continue;
        }
        let fields = split_fields(line_no, line, expected)?;
        // The unit separator delimits pseudo-word components.
        if fields[..2]
            .iter()
            .any(|f| f.contains(PSEUDO_WORD_SEPARATOR))
        {
            return Err(Error::malformed(
                line_no,
                "word or language tag contains U+001F",
            ));
        }
        current.push(TaggedToken {
            word: fields[0].to_owned(),
            lang_tag: fields[1].to_owned(),
            pos_tag: with_pos.then(|| fields[2].to_owned()),
        });
    }
    sentences.extend(Sentence::new(current));
    Ok(sentences)
}

/// Parses a gold-tagged `word<TAB>lang<TAB>pos` file.
pub fn parse_training_file(input: impl AsRef<[u8]>) -> Result<Vec<Sentence>> {
    parse_sentences(input.as_ref(), true)
}

/// Parses a raw `word<TAB>lang` file. Lines carrying a POS column are rejected.
pub fn parse_test_file(input: impl AsRef<[u8]>) -> Result<Vec<Sentence>> {
    parse_sentences(input.as_ref(), false)
}

/// Renders fully tagged sentences in the training-file format.
pub fn write_tagged_file(sentences: &[Sentence]) -> Result<String> {
    let mut out = String::new();
    for (s_idx, sentence) in sentences.iter().enumerate() {
        if s_idx > 0 {
            out.push('\n');
        }
        for (t_idx, token) in sentence.iter().enumerate() {
            let pos = token.pos_tag.as_deref().ok_or(Error::MissingTag {
                sentence: s_idx,
                token: t_idx,
            })?;
            out.push_str(&token.word);
            out.push('\t');
            out.push_str(&token.lang_tag);
            out.push('\t');
            out.push_str(pos);
            out.push('\n');
        }
    }
    Ok(out)
}

/// Loads a `word<TAB>{VERB|PNON|CONJ}` dictionary. The last entry for a word
/// wins; replaced entries are reported by [`Dictionary::warnings`].
pub fn load_dictionary(input: impl AsRef<[u8]>) -> Result<Dictionary> {
    let text = decode(input.as_ref())?;
    let mut dict = Dictionary::new();
    for (line_no, line) in lines(text) {
        if is_blank(line) {
            continue;
        }
        let fields = split_fields(line_no, line, 2)?;
        let pos: BroadPos = fields[1].parse().map_err(|_| Error::UnknownBroadPos {
            line: line_no,
            value: fields[1].to_owned(),
        })?;
        if let Some(previous) = dict.insert(fields[0], pos) {
            dict.duplicates.push(DuplicateEntry {
                line: line_no,
                word: fields[0].to_owned(),
                previous,
                replacement: pos,
            });
        }
    }
    Ok(dict)
}
