//! Suffix statistics of rare pseudo-words, used to score observations never
//! seen in training.

use std::collections::HashMap;

use super::counts::CountTables;
use super::tagset::{TagId, TagSet};
use crate::features::{make_pseudo_word, ObservationKey, PseudoWord};

/// Tag counts for one suffix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixCounts {
    pub(crate) total: u64,
    /// Indexed by real tag id.
    pub(crate) by_tag: Vec<u64>,
}

impl SuffixCounts {
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn by_tag(&self) -> &[u64] {
        &self.by_tag
    }
}

/// One step of successive abstraction.
#[derive(Debug, Clone, PartialEq)]
pub struct AbstractionLevel {
    pub suffix: String,
    /// P(t | suffix), indexed by real tag id.
    pub distribution: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuffixModel {
    pub(crate) max_suffix_len: usize,
    pub(crate) rare_threshold: u64,
    pub(crate) theta: f64,
    pub(crate) counts: HashMap<String, SuffixCounts>,
    pub(crate) tag_prior: Vec<f64>,
}

/// Maximum-likelihood unigram probabilities of the real tags.
pub(crate) fn tag_priors(counts: &CountTables, tags: &TagSet) -> Vec<f64> {
    let n = counts.token_total();
    tags.real_ids()
        .map(|t| {
            if n == 0 {
                0.0
            } else {
                counts.unigram(t) as f64 / n as f64
            }
        })
        .collect()
}

/// Sample standard deviation of the tag priors.
pub(crate) fn prior_std_dev(priors: &[f64]) -> f64 {
    let s = priors.len();
    if s < 2 {
        return 0.0;
    }
    let mean = priors.iter().sum::<f64>() / s as f64;
    let var = priors.iter().map(|p| (p - mean) * (p - mean)).sum::<f64>() / (s - 1) as f64;
    var.sqrt()
}

/// Collects suffix statistics over every training instance whose pseudo-word
/// occurs at most `rare_threshold` times. Each instance adds its gold tag to
/// all of its suffixes of length `0..=max_suffix_len` (in characters).
pub fn build_suffix_model<'a, I>(
    counts: &CountTables,
    tags: &TagSet,
    instances: I,
    rare_threshold: u64,
    max_suffix_len: usize,
) -> SuffixModel
where
    I: IntoIterator<Item = (&'a ObservationKey, TagId)>,
{
    let num_tags = tags.len();
    let mut table: HashMap<String, SuffixCounts> = HashMap::new();
    for (obs, tag) in instances {
        if counts.obs_total(obs) > rare_threshold {
            continue;
        }
        let pseudo = make_pseudo_word(obs);
        for suffix in pseudo.suffixes(max_suffix_len) {
            let entry = table
                .entry(suffix.to_owned())
                .or_insert_with(|| SuffixCounts {
                    total: 0,
                    by_tag: vec![0; num_tags],
                });
            entry.total += 1;
            entry.by_tag[tag.index()] += 1;
        }
    }
    let tag_prior = tag_priors(counts, tags);
    SuffixModel {
        max_suffix_len,
        rare_threshold,
        theta: prior_std_dev(&tag_prior),
        counts: table,
        tag_prior,
    }
}

impl SuffixModel {
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn max_suffix_len(&self) -> usize {
        self.max_suffix_len
    }

    pub fn rare_threshold(&self) -> u64 {
        self.rare_threshold
    }

    pub fn tag_prior(&self) -> &[f64] {
        &self.tag_prior
    }

    pub fn suffix_counts(&self, suffix: &str) -> Option<&SuffixCounts> {
        self.counts.get(suffix)
    }

    pub fn count(&self, suffix: &str, tag: TagId) -> u64 {
        self.counts
            .get(suffix)
            .and_then(|c| c.by_tag.get(tag.index()).copied())
            .unwrap_or(0)
    }

    pub fn suffix_total(&self, suffix: &str) -> u64 {
        self.counts.get(suffix).map_or(0, |c| c.total)
    }

    pub fn num_suffixes(&self) -> usize {
        self.counts.len()
    }

    /// Suffix entries sorted by suffix.
    pub fn sorted_entries(&self) -> Vec<(&str, &SuffixCounts)> {
        let mut entries: Vec<_> = self.counts.iter().map(|(s, c)| (s.as_str(), c)).collect();
        entries.sort_unstable_by(|a, b| a.0.cmp(b.0));
        entries
    }

    fn ml<'a>(&self, counts: &'a SuffixCounts) -> impl Iterator<Item = f64> + 'a {
        let total = counts.total as f64;
        counts.by_tag.iter().map(move |&c| c as f64 / total)
    }

    /// Successive abstraction from the empty suffix up to the longest stored
    /// suffix of `pseudo`:
    /// `P(t|s_k) = (ML(t|s_k) + θ·P(t|s_{k-1})) / (1 + θ)`.
    ///
    /// The base level is the tag distribution over all rare instances, or the
    /// tag priors when the training data had no rare instances.
    pub fn abstraction_levels(&self, pseudo: &PseudoWord) -> Vec<AbstractionLevel> {
        let mut levels = Vec::new();
        self.walk(pseudo, |suffix, dist| {
            levels.push(AbstractionLevel {
                suffix: suffix.to_owned(),
                distribution: dist.to_vec(),
            })
        });
        levels
    }

    /// P(t | longest matching suffix), indexed by real tag id.
    pub fn tag_distribution(&self, pseudo: &PseudoWord) -> Vec<f64> {
        self.walk(pseudo, |_, _| {})
    }

    /// Emission scores `P(t|s) / P(t)`; zero where the prior is zero.
    pub fn emission_scores(&self, pseudo: &PseudoWord) -> Vec<f64> {
        let mut dist = self.tag_distribution(pseudo);
        for (p, &prior) in dist.iter_mut().zip(&self.tag_prior) {
            *p = if prior > 0.0 { *p / prior } else { 0.0 };
        }
        dist
    }

    fn walk(&self, pseudo: &PseudoWord, mut visit: impl FnMut(&str, &[f64])) -> Vec<f64> {
        let mut dist: Vec<f64> = match self.counts.get("") {
            Some(base) if base.total > 0 => self.ml(base).collect(),
            _ => self.tag_prior.clone(),
        };
        visit("", &dist);
        let norm = 1.0 + self.theta;
        for suffix in pseudo.suffixes(self.max_suffix_len).skip(1) {
            let Some(counts) = self.counts.get(suffix).filter(|c| c.total > 0) else {
                break;
            };
            for (p, ml) in dist.iter_mut().zip(self.ml(counts)) {
                *p = (ml + self.theta * *p) / norm;
            }
            visit(suffix, &dist);
        }
        dist
    }
}
