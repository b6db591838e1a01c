//! Overall and per-tag accuracy.
//!
//! Per-tag accuracy is recall: correct predictions of a tag divided by its
//! gold occurrences.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::corpus::{Sentence, TaggedToken};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TagAccuracy {
    pub gold_count: u64,
    pub correct_count: u64,
    pub predicted_count: u64,
    /// `correct_count / gold_count`, or 0 for tags that only occur in the
    /// predictions.
    pub accuracy: f64,
}

impl TagAccuracy {
    /// False for tags that were predicted but never occur in the gold data.
    pub fn in_gold(&self) -> bool {
        self.gold_count > 0
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EvalReport {
    pub overall: f64,
    pub token_total: u64,
    pub correct_total: u64,
    pub per_tag: BTreeMap<String, TagAccuracy>,
}

impl EvalReport {
    /// Per-tag rows by descending gold count, then tag name.
    pub fn sorted_rows(&self) -> Vec<(&str, &TagAccuracy)> {
        let mut rows: Vec<_> = self.per_tag.iter().map(|(t, a)| (t.as_str(), a)).collect();
        rows.sort_by(|a, b| {
            b.1.gold_count
                .cmp(&a.1.gold_count)
                .then_with(|| a.0.cmp(b.0))
        });
        rows
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn pos_of(token: &TaggedToken, sentence: usize, index: usize) -> Result<&str> {
    token.pos_tag.as_deref().ok_or(Error::MissingTag {
        sentence,
        token: index,
    })
}

/// Compares predicted tags against gold tags. Both sides must contain the same
/// sentences with the same `(word, lang)` tokens.
pub fn evaluate(gold: &[Sentence], pred: &[Sentence]) -> Result<EvalReport> {
    if gold.len() != pred.len() {
        return Err(Error::Misaligned(gold.len().min(pred.len())));
    }
    let mut report = EvalReport::default();
    for (s_idx, (g, p)) in gold.iter().zip(pred).enumerate() {
        if g.len() != p.len() {
            return Err(Error::Misaligned(s_idx));
        }
        for (t_idx, (gt, pt)) in g.iter().zip(p).enumerate() {
            if gt.word != pt.word || gt.lang_tag != pt.lang_tag {
                return Err(Error::Misaligned(s_idx));
            }
            let gold_tag = pos_of(gt, s_idx, t_idx)?;
            let pred_tag = pos_of(pt, s_idx, t_idx)?;
            report.token_total += 1;
            let row = report.per_tag.entry(gold_tag.to_owned()).or_default();
            row.gold_count += 1;
            if gold_tag == pred_tag {
                row.correct_count += 1;
                row.predicted_count += 1;
                report.correct_total += 1;
            } else {
                report
                    .per_tag
                    .entry(pred_tag.to_owned())
                    .or_default()
                    .predicted_count += 1;
            }
        }
    }
    for row in report.per_tag.values_mut() {
        row.accuracy = ratio(row.correct_count, row.gold_count);
    }
    report.overall = ratio(report.correct_total, report.token_total);
    Ok(report)
}

/// Accuracy of always predicting the most frequent training tag (earliest
/// seen on ties).
pub fn majority_baseline(train: &[Sentence], gold: &[Sentence]) -> Result<EvalReport> {
    let mut counts: HashMap<&str, (u64, usize)> = HashMap::new();
    for (s_idx, sentence) in train.iter().enumerate() {
        for (t_idx, token) in sentence.iter().enumerate() {
            let tag = pos_of(token, s_idx, t_idx)?;
            let next_rank = counts.len();
            counts.entry(tag).or_insert((0, next_rank)).0 += 1;
        }
    }
    let majority = counts
        .iter()
        .max_by(|a, b| a.1 .0.cmp(&b.1 .0).then_with(|| b.1 .1.cmp(&a.1 .1)))
        .map(|(t, _)| t.to_string())
        .ok_or(Error::EmptyCorpus)?;
    let pred: Vec<Sentence> = gold
        .iter()
        .map(|s| {
            let mut s = s.clone();
            for token in s.tokens_mut() {
                token.pos_tag = Some(majority.clone());
            }
            s
        })
        .collect();
    evaluate(gold, &pred)
}

pub fn format_percent(fraction: f64) -> String {
    format!("{:.2}%", fraction * 100.0)
}

/// Human-readable table. The first data row is `Overall`; per-tag rows follow
/// when `per_tag` is set.
pub fn render_report(report: &EvalReport, per_tag: bool) -> String {
    const HEADER: &str = "POS/Categorical";
    let rows = if per_tag {
        report.sorted_rows()
    } else {
        Vec::new()
    };
    let width = rows
        .iter()
        .map(|(t, _)| t.chars().count())
        .chain([HEADER.len()])
        .max()
        .unwrap_or(HEADER.len());

    let mut out = String::new();
    let _ = writeln!(
        out,
        "{HEADER:<width$}  {:>8}  {:>8}  {:>8}",
        "Accuracy", "Correct", "Gold"
    );
    let _ = writeln!(
        out,
        "{:<width$}  {:>8}  {:>8}  {:>8}",
        "Overall",
        format_percent(report.overall),
        report.correct_total,
        report.token_total
    );
    for (tag, row) in rows {
        let _ = write!(
            out,
            "{:<width$}  {:>8}  {:>8}  {:>8}",
            tag,
            format_percent(row.accuracy),
            row.correct_count,
            row.gold_count
        );
        if !row.in_gold() {
            let _ = write!(
                out,
                "  (predicted {} times, not in gold)",
                row.predicted_count
            );
        }
        out.push('\n');
    }
    out
}

/// Machine-readable variant: an `OVERALL` row followed by one
/// `tag<TAB>gold<TAB>correct<TAB>accuracy` row per gold tag.
pub fn render_tsv(report: &EvalReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "OVERALL\t{}\t{}\t{:.6}",
        report.token_total, report.correct_total, report.overall
    );
    for (tag, row) in report.sorted_rows() {
        if row.in_gold() {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{:.6}",
                tag, row.gold_count, row.correct_count, row.accuracy
            );
        }
    }
    out
}
