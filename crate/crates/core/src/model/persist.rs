//! Versioned plain-text model format.
//!
//! ```text
//! CODEMIX-HMM v1
//! [config]      key=value (mode, emission_variant, max_suffix_len, rare_threshold)
//! [tags]        one real tag per line, in tag-set order
//! [unigram]     tag TAB count
//! [bigram]      t1 TAB t2 TAB count
//! [trigram]     t1 TAB t2 TAB t3 TAB count
//! [lambda]      λ1 TAB λ2 TAB λ3
//! [theta]       value
//! [emission]    word TAB meta TAB lang TAB tag TAB count
//! [obs]         word TAB meta TAB lang TAB count
//! [suffix]      escaped-suffix TAB tag TAB count
//! [dictionary]  word TAB broad-pos   (unconstrained models only)
//! ```
//!
//! Floats are written with 17 significant digits so they read back to the
//! same bits. Entries are sorted, so equal models serialize to equal bytes.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use super::counts::CountTables;
use super::interpolation::InterpolationWeights;
use super::suffix::{tag_priors, SuffixCounts, SuffixModel};
use super::tagset::{TagId, TagSet};
use super::{check_resources, ModelConfig, TrainedModel};
use crate::corpus::{BroadPos, Dictionary};
use crate::error::{Error, Result};
use crate::features::{MetaTag, Mode, ObservationKey};

pub const MODEL_HEADER: &str = "CODEMIX-HMM v1";

const SECTIONS: [&str; 11] = [
    "config",
    "tags",
    "unigram",
    "bigram",
    "trigram",
    "lambda",
    "theta",
    "emission",
    "obs",
    "suffix",
    "dictionary",
];

fn float(v: f64) -> String {
    format!("{v:.16e}")
}

fn escape_suffix(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\u{1f}' => out.push_str("\\x1f"),
            c => out.push(c),
        }
    }
    out
}

fn unescape_suffix(s: &str, line: usize) -> Result<String> {
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(idx) = rest.find('\\') {
        out.push_str(&rest[..idx]);
        rest = &rest[idx..];
        if let Some(r) = rest.strip_prefix("\\\\") {
            out.push('\\');
            rest = r;
        } else if let Some(r) = rest.strip_prefix("\\t") {
            out.push('\t');
            rest = r;
        } else if let Some(r) = rest.strip_prefix("\\x1f") {
            out.push('\u{1f}');
            rest = r;
        } else {
            return Err(Error::model_format(line, "invalid escape in suffix"));
        }
    }
    out.push_str(rest);
    Ok(out)
}

/// Serializes a model.
pub fn write_model(model: &TrainedModel) -> String {
    let tags = model.tag_set();
    let counts = model.counts();
    let config = model.config();
    let mut out = String::new();

    // Writing to a String cannot fail.
    let _ = writeln!(out, "{MODEL_HEADER}");
    let _ = writeln!(out, "[config]");
    let _ = writeln!(out, "mode={}", config.mode);
    let _ = writeln!(out, "emission_variant={}", config.emission_variant);
    let _ = writeln!(out, "max_suffix_len={}", config.max_suffix_len);
    let _ = writeln!(out, "rare_threshold={}", config.rare_threshold);

    let _ = writeln!(out, "[tags]");
    for name in tags.names() {
        let _ = writeln!(out, "{name}");
    }

    let _ = writeln!(out, "[unigram]");
    for t in tags.all_ids() {
        let c = counts.unigram(t);
        if c > 0 {
            let _ = writeln!(out, "{}\t{}", tags.name(t), c);
        }
    }
    let _ = writeln!(out, "[bigram]");
    for ((a, b), c) in counts.bigrams() {
        let _ = writeln!(out, "{}\t{}\t{}", tags.name(a), tags.name(b), c);
    }
    let _ = writeln!(out, "[trigram]");
    for ((a, b, t), c) in counts.trigrams() {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}",
            tags.name(a),
            tags.name(b),
            tags.name(t),
            c
        );
    }

    let l = model.lambdas();
    let _ = writeln!(out, "[lambda]");
    let _ = writeln!(
        out,
        "{}\t{}\t{}",
        float(l.unigram),
        float(l.bigram),
        float(l.trigram)
    );
    let _ = writeln!(out, "[theta]");
    let _ = writeln!(out, "{}", float(model.suffix_model().theta()));

    let observations = counts.sorted_observations();
    let _ = writeln!(out, "[emission]");
    for (o, oc) in &observations {
        for &(t, c) in oc.by_tag() {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                o.word,
                o.meta,
                o.lang,
                tags.name(t),
                c
            );
        }
    }
    let _ = writeln!(out, "[obs]");
    for (o, oc) in &observations {
        let _ = writeln!(out, "{}\t{}\t{}\t{}", o.word, o.meta, o.lang, oc.total());
    }

    let _ = writeln!(out, "[suffix]");
    for (suffix, sc) in model.suffix_model().sorted_entries() {
        let escaped = escape_suffix(suffix);
        for t in tags.real_ids() {
            let c = sc.by_tag()[t.index()];
            if c > 0 {
                let _ = writeln!(out, "{}\t{}\t{}", escaped, tags.name(t), c);
            }
        }
    }

    if let Some(dict) = model.dictionary() {
        let _ = writeln!(out, "[dictionary]");
        for (word, pos) in dict.sorted_entries() {
            let _ = writeln!(out, "{word}\t{pos}");
        }
    }
    out
}

struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn fields(&self, n: usize) -> Result<Vec<&'a str>> {
        let fields: Vec<&str> = self.text.split('\t').collect();
        if fields.len() != n {
            return Err(Error::model_format(
                self.no,
                format!("expected {n} fields, found {}", fields.len()),
            ));
        }
        Ok(fields)
    }

    fn count(&self, s: &str) -> Result<u64> {
        match s.parse::<u64>() {
            Ok(c) if c > 0 => Ok(c),
            _ => Err(Error::model_format(self.no, format!("invalid count {s:?}"))),
        }
    }

    fn float(&self, s: &str) -> Result<f64> {
        s.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::model_format(self.no, format!("invalid number {s:?}")))
    }

    fn tag(&self, tags: &TagSet, name: &str) -> Result<TagId> {
        tags.id(name)
            .ok_or_else(|| Error::model_format(self.no, format!("unknown tag {name:?}")))
    }

    fn real_tag(&self, tags: &TagSet, name: &str) -> Result<TagId> {
        match self.tag(tags, name)? {
            t if tags.is_boundary(t) => Err(Error::model_format(
                self.no,
                format!("boundary tag {name:?} not allowed here"),
            )),
            t => Ok(t),
        }
    }

    fn observation(&self, fields: &[&str]) -> Result<ObservationKey> {
        let meta: MetaTag = fields[1]
            .parse()
            .map_err(|e: String| Error::model_format(self.no, e))?;
        Ok(ObservationKey::new(fields[0], meta, fields[2]))
    }
}

/// Reads a model written by [`write_model`].
pub fn read_model(text: &str) -> Result<TrainedModel> {
    let mut lines = text
        .split('\n')
        .enumerate()
        .map(|(i, l)| Line {
            no: i + 1,
            text: l.strip_suffix('\r').unwrap_or(l),
        })
        .filter(|l| !l.text.is_empty());

    match lines.next() {
        Some(l) if l.text == MODEL_HEADER => {}
        Some(l) => {
            return Err(Error::model_format(
                l.no,
                format!("expected header {MODEL_HEADER:?}"),
            ))
        }
        None => return Err(Error::model_format(1, "empty model file")),
    }

    let mut sections: HashMap<&str, Vec<Line>> = HashMap::new();
    let mut current: Option<&str> = None;
    for line in lines {
        let header = line
            .text
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .and_then(|name| SECTIONS.iter().find(|&&s| s == name));
        if let Some(&name) = header {
            if sections.contains_key(name) {
                return Err(Error::model_format(
                    line.no,
                    format!("duplicate section [{name}]"),
                ));
            }
            sections.insert(name, Vec::new());
            current = Some(name);
            continue;
        }
        match current {
            Some(name) => sections.get_mut(name).expect("section exists").push(line),
            None => return Err(Error::model_format(line.no, "content before first section")),
        }
    }
    for name in &SECTIONS[..10] {
        if !sections.contains_key(name) {
            return Err(Error::model_format(0, format!("missing section [{name}]")));
        }
    }

    let config = read_config(&sections["config"])?;
    let tags = TagSet::new(sections["tags"].iter().map(|l| l.text))
        .map_err(|e| Error::model_format(0, e.to_string()))?;
    if tags.len() != sections["tags"].len() {
        return Err(Error::model_format(0, "duplicate entries in [tags]"));
    }

    let mut counts = CountTables::empty(&tags);
    for line in &sections["unigram"] {
        let f = line.fields(2)?;
        let t = line.tag(&tags, f[0])?;
        counts.unigram[t.index()] = line.count(f[1])?;
    }
    counts.token_total = tags.real_ids().map(|t| counts.unigram(t)).sum();
    for line in &sections["bigram"] {
        let f = line.fields(3)?;
        let key = (line.tag(&tags, f[0])?, line.tag(&tags, f[1])?);
        counts.bigram.insert(key, line.count(f[2])?);
    }
    for line in &sections["trigram"] {
        let f = line.fields(4)?;
        let key = (
            line.tag(&tags, f[0])?,
            line.tag(&tags, f[1])?,
            line.tag(&tags, f[2])?,
        );
        counts.trigram.insert(key, line.count(f[3])?);
    }

    let lambdas = match sections["lambda"].as_slice() {
        [line] => {
            let f = line.fields(3)?;
            InterpolationWeights {
                unigram: line.float(f[0])?,
                bigram: line.float(f[1])?,
                trigram: line.float(f[2])?,
            }
        }
        _ => {
            return Err(Error::model_format(
                0,
                "[lambda] must have exactly one line",
            ))
        }
    };
    let theta = match sections["theta"].as_slice() {
        [line] => line.float(line.text)?,
        _ => return Err(Error::model_format(0, "[theta] must have exactly one line")),
    };

    for line in &sections["emission"] {
        let f = line.fields(5)?;
        let o = line.observation(&f)?;
        let t = line.real_tag(&tags, f[3])?;
        counts
            .observations
            .entry(o)
            .or_default()
            .add(t, line.count(f[4])?);
    }
    let mut obs_seen = 0;
    for line in &sections["obs"] {
        let f = line.fields(4)?;
        let o = line.observation(&f)?;
        let total = line.count(f[3])?;
        match counts.observations.get(&o) {
            Some(oc) if oc.total() == total => obs_seen += 1,
            _ => {
                return Err(Error::model_format(
                    line.no,
                    "observation total disagrees with [emission]",
                ))
            }
        }
    }
    if obs_seen != counts.observations.len() {
        return Err(Error::model_format(
            0,
            "[obs] does not cover every observation in [emission]",
        ));
    }

    let mut suffix_counts: BTreeMap<String, SuffixCounts> = BTreeMap::new();
    for line in &sections["suffix"] {
        let f = line.fields(3)?;
        let suffix = unescape_suffix(f[0], line.no)?;
        let t = line.real_tag(&tags, f[1])?;
        let c = line.count(f[2])?;
        let entry = suffix_counts.entry(suffix).or_insert_with(|| SuffixCounts {
            total: 0,
            by_tag: vec![0; tags.len()],
        });
        entry.by_tag[t.index()] += c;
        entry.total += c;
    }
    let tag_prior = tag_priors(&counts, &tags);
    let suffix = SuffixModel {
        max_suffix_len: config.max_suffix_len,
        rare_threshold: config.rare_threshold,
        theta,
        counts: suffix_counts.into_iter().collect(),
        tag_prior,
    };

    let dictionary = match sections.get("dictionary") {
        Some(lines) => {
            let mut dict = Dictionary::new();
            for line in lines {
                let f = line.fields(2)?;
                let pos: BroadPos = f[1].parse().map_err(|_| {
                    Error::model_format(line.no, format!("invalid broad POS {:?}", f[1]))
                })?;
                dict.insert(f[0], pos);
            }
            Some(dict)
        }
        None => None,
    };
    check_resources(config.mode, dictionary.as_ref())
        .map_err(|e| Error::model_format(0, e.to_string()))?;

    Ok(TrainedModel::from_parts(
        config, tags, counts, lambdas, suffix, dictionary,
    ))
}

fn read_config(lines: &[Line]) -> Result<ModelConfig> {
    let mut values = HashMap::new();
    for line in lines {
        let (k, v) = line
            .text
            .split_once('=')
            .ok_or_else(|| Error::model_format(line.no, "expected key=value"))?;
        values.insert(k, (line.no, v));
    }
    let get = |key: &str| {
        values
            .get(key)
            .copied()
            .ok_or_else(|| Error::model_format(0, format!("missing config key {key:?}")))
    };
    let bad = |no: usize, key: &str| Error::model_format(no, format!("invalid value for {key}"));

    let (no, v) = get("mode")?;
    let mode: Mode = v.parse().map_err(|_| bad(no, "mode"))?;
    let (no, v) = get("emission_variant")?;
    let emission_variant = v.parse().map_err(|_| bad(no, "emission_variant"))?;
    let (no, v) = get("max_suffix_len")?;
    let max_suffix_len = v.parse().map_err(|_| bad(no, "max_suffix_len"))?;
    let (no, v) = get("rare_threshold")?;
    let rare_threshold = v.parse().map_err(|_| bad(no, "rare_threshold"))?;
    Ok(ModelConfig {
        mode,
        emission_variant,
        max_suffix_len,
        rare_threshold,
    })
}
