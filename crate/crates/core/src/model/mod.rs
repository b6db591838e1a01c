//! The trigram HMM: count tables, smoothed transition probabilities,
//! observation probabilities and suffix-based scores for unseen observations.

mod counts;
mod interpolation;
mod persist;
mod suffix;
mod tagset;

use std::fmt;
use std::str::FromStr;

pub use counts::{CountTables, ObservationCounts};
pub use interpolation::{deleted_interpolation, Interpolation, InterpolationWeights};
pub use persist::{read_model, write_model, MODEL_HEADER};
pub use suffix::{build_suffix_model, AbstractionLevel, SuffixCounts, SuffixModel};
pub use tagset::{TagId, TagSet};

use crate::corpus::{Dictionary, Sentence, TaggedToken};
use crate::error::{Error, Result};
use crate::features::{assign_meta_tag, make_observation, make_pseudo_word, Mode, ObservationKey};

/// How known observations are scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EmissionVariant {
    /// `C(o,t) / C(o)`: normalized over tags for a fixed observation.
    #[default]
    Observation,
    /// `C(o,t) / C(t)`: the conditional likelihood P(o|t).
    Conditional,
}

impl EmissionVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            EmissionVariant::Observation => "observation",
            EmissionVariant::Conditional => "conditional",
        }
    }
}

impl fmt::Display for EmissionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for EmissionVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "observation" => Ok(EmissionVariant::Observation),
            "conditional" => Ok(EmissionVariant::Conditional),
            other => Err(format!("unknown emission variant {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModelConfig {
    pub mode: Mode,
    pub emission_variant: EmissionVariant,
    /// Longest suffix, in characters, used for unseen observations.
    pub max_suffix_len: usize,
    /// Pseudo-words seen at most this often feed the suffix statistics.
    pub rare_threshold: u64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig {
            mode: Mode::Constrained,
            emission_variant: EmissionVariant::Observation,
            max_suffix_len: 10,
            rare_threshold: 2,
        }
    }
}

/// An immutable trained tagger. All queries are pure reads, so a model can be
/// shared between threads.
#[derive(Debug, Clone)]
pub struct TrainedModel {
    config: ModelConfig,
    tags: TagSet,
    counts: CountTables,
    lambdas: InterpolationWeights,
    suffix: SuffixModel,
    dictionary: Option<Dictionary>,
    /// ln P(c | a, b), indexed `(a * K + b) * K + c`.
    log_transitions: Vec<f64>,
    majority_tag: TagId,
}

fn ml(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

pub(crate) fn check_resources(mode: Mode, dict: Option<&Dictionary>) -> Result<()> {
    match (mode, dict) {
        (Mode::Constrained, Some(_)) => Err(Error::Config(
            "constrained mode forbids external resources (dictionary given)".into(),
        )),
        (Mode::Unconstrained, None) => Err(Error::Config(
            "unconstrained mode requires a dictionary".into(),
        )),
        _ => Ok(()),
    }
}

/// Trains a model from gold-tagged sentences.
pub fn train(
    corpus: &[Sentence],
    dict: Option<Dictionary>,
    config: ModelConfig,
) -> Result<TrainedModel> {
    TrainedModel::train(corpus, dict, config)
}

impl TrainedModel {
    pub fn train(
        corpus: &[Sentence],
        dict: Option<Dictionary>,
        config: ModelConfig,
    ) -> Result<Self> {
        check_resources(config.mode, dict.as_ref())?;
        if corpus.is_empty() {
            return Err(Error::EmptyCorpus);
        }

        let mut tags = TagSet::new(std::iter::empty::<&str>())?;
        for (s_idx, sentence) in corpus.iter().enumerate() {
            for (t_idx, token) in sentence.iter().enumerate() {
                let pos = token.pos_tag.as_deref().ok_or(Error::MissingTag {
                    sentence: s_idx,
                    token: t_idx,
                })?;
                tags.intern(pos)?;
            }
        }

        let mut counts = CountTables::empty(&tags);
        let mut instances = Vec::new();
        for sentence in corpus {
            let mut seq = Vec::with_capacity(sentence.len());
            let mut obs = Vec::with_capacity(sentence.len());
            for token in sentence {
                let tag = tags.require_real(token.pos_tag.as_deref().unwrap_or_default())?;
                let meta = assign_meta_tag(&token.word, config.mode, dict.as_ref());
                let key = make_observation(token, meta);
                seq.push(tag);
                obs.push(key.clone());
                instances.push((key, tag));
            }
            counts.add_sentence(&tags, &seq, obs);
        }

        let lambdas = deleted_interpolation(&counts).weights;
        let suffix = build_suffix_model(
            &counts,
            &tags,
            instances.iter().map(|(o, t)| (o, *t)),
            config.rare_threshold,
            config.max_suffix_len,
        );
        Ok(Self::from_parts(
            config, tags, counts, lambdas, suffix, dict,
        ))
    }

    pub(crate) fn from_parts(
        config: ModelConfig,
        tags: TagSet,
        counts: CountTables,
        lambdas: InterpolationWeights,
        suffix: SuffixModel,
        dictionary: Option<Dictionary>,
    ) -> Self {
        let majority_tag = tags
            .real_ids()
            .fold(None, |best: Option<TagId>, t| match best {
                Some(b) if counts.unigram(b) >= counts.unigram(t) => Some(b),
                _ => Some(t),
            })
            .unwrap_or(TagId(0));
        let mut model = TrainedModel {
            config,
            tags,
            counts,
            lambdas,
            suffix,
            dictionary,
            log_transitions: Vec::new(),
            majority_tag,
        };
        let k = model.tags.num_symbols();
        let mut table = vec![f64::NEG_INFINITY; k * k * k];
        for a in model.tags.all_ids() {
            for b in model.tags.all_ids() {
                for c in model.tags.all_ids() {
                    table[(a.index() * k + b.index()) * k + c.index()] =
                        model.transition_prob_ids(a, b, c).ln();
                }
            }
        }
        model.log_transitions = table;
        model
    }

    pub fn config(&self) -> &ModelConfig {
        &self.config
    }

    pub fn tag_set(&self) -> &TagSet {
        &self.tags
    }

    pub fn counts(&self) -> &CountTables {
        &self.counts
    }

    pub fn lambdas(&self) -> InterpolationWeights {
        self.lambdas
    }

    pub fn suffix_model(&self) -> &SuffixModel {
        &self.suffix
    }

    pub fn dictionary(&self) -> Option<&Dictionary> {
        self.dictionary.as_ref()
    }

    /// Real tag with the highest training count (earliest on ties).
    pub fn majority_tag(&self) -> TagId {
        self.majority_tag
    }

    /// Builds the observation symbol for a token under this model's mode and
    /// dictionary.
    pub fn observation(&self, token: &TaggedToken) -> ObservationKey {
        let meta = assign_meta_tag(&token.word, self.config.mode, self.dictionary.as_ref());
        make_observation(token, meta)
    }

    /// Interpolated `P(t0 | t2, t1)` by tag id.
    pub fn transition_prob_ids(&self, t2: TagId, t1: TagId, t0: TagId) -> f64 {
        let c = &self.counts;
        let l = &self.lambdas;
        let tri = ml(c.trigram(t2, t1, t0), c.bigram(t2, t1));
        let bi = ml(c.bigram(t1, t0), c.unigram(t1));
        let uni = ml(c.unigram(t0), c.token_total());
        l.trigram * tri + l.bigram * bi + l.unigram * uni
    }

    /// Interpolated `P(t0 | t2, t1)`: `λ3·ML3 + λ2·ML2 + λ1·ML1`, where each
    /// ML term is zero when its denominator is zero.
    pub fn transition_prob(&self, t2: &str, t1: &str, t0: &str) -> Result<f64> {
        Ok(self.transition_prob_ids(
            self.tags.require(t2)?,
            self.tags.require(t1)?,
            self.tags.require(t0)?,
        ))
    }

    /// Natural log of [`Self::transition_prob_ids`], precomputed.
    #[inline]
    pub fn log_transition(&self, t2: TagId, t1: TagId, t0: TagId) -> f64 {
        let k = self.tags.num_symbols();
        self.log_transitions[(t2.index() * k + t1.index()) * k + t0.index()]
    }

    /// Observation probability for every real tag (indexed by tag id). Unseen
    /// observations are scored by the suffix model.
    pub fn emission_scores(&self, o: &ObservationKey) -> Vec<f64> {
        match self.counts.observation(o) {
            Some(oc) => {
                let mut scores = vec![0.0; self.tags.len()];
                for &(t, n) in oc.by_tag() {
                    scores[t.index()] = match self.config.emission_variant {
                        EmissionVariant::Observation => ml(n, oc.total()),
                        EmissionVariant::Conditional => ml(n, self.counts.unigram(t)),
                    };
                }
                scores
            }
            None => self.suffix.emission_scores(&make_pseudo_word(o)),
        }
    }

    /// Observation probability of `o` under tag `t`.
    pub fn emission_prob(&self, o: &ObservationKey, t: &str) -> Result<f64> {
        let tag = self.tags.require_real(t)?;
        match self.counts.observation(o) {
            Some(oc) => {
                let n = oc.count(tag);
                Ok(match self.config.emission_variant {
                    EmissionVariant::Observation => ml(n, oc.total()),
                    EmissionVariant::Conditional => ml(n, self.counts.unigram(tag)),
                })
            }
            None => self.unknown_prob(o, t),
        }
    }

    /// Suffix-based score `P(t|s) / P(t)` for an observation never seen in
    /// training.
    pub fn unknown_prob(&self, o: &ObservationKey, t: &str) -> Result<f64> {
        if self.counts.obs_total(o) > 0 {
            return Err(Error::KnownObservation);
        }
        let tag = self.tags.require_real(t)?;
        Ok(self.suffix.emission_scores(&make_pseudo_word(o))[tag.index()])
    }
}
