//! Trigram Viterbi decoding in log space.
//!
//! A path `t_1..t_n` is scored as
//! `Σ_i [ln P(t_i | t_{i-2}, t_{i-1}) + ln e(o_i, t_i)] + ln P(EOS | t_{n-1}, t_n)`
//! with `(t_{-1}, t_0) = (BOS1, BOS2)`. Zero probabilities become `-inf`.
//!
//! Ties are broken toward the smallest `(previous, current)` tag-index pair:
//! first for the final state, then for every backpointer. Among equally
//! scored paths this selects the lexicographically smallest under the key
//! `(t_{n-1}, t_n, t_{n-2}, t_{n-3}, .., t_1)`.

use rayon::prelude::*;

use crate::corpus::Sentence;
use crate::error::{Error, Result};
use crate::features::ObservationKey;
use crate::model::{TagId, TrainedModel};

/// Largest input accepted by [`brute_force_decode`].
pub const BRUTE_FORCE_MAX_LEN: usize = 8;
/// Largest tag set accepted by [`brute_force_decode`].
pub const BRUTE_FORCE_MAX_TAGS: usize = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct Decoding {
    pub tags: Vec<TagId>,
    /// Log-score of `tags`; `-inf` when the fallback was used.
    pub log_score: f64,
    /// Every path had probability zero, so each position got the majority tag.
    pub fallback_used: bool,
}

impl Decoding {
    pub fn tag_names<'m>(&self, model: &'m TrainedModel) -> Vec<&'m str> {
        self.tags.iter().map(|&t| model.tag_set().name(t)).collect()
    }

    fn fallback(model: &TrainedModel, len: usize) -> Self {
        Decoding {
            tags: vec![model.majority_tag(); len],
            log_score: f64::NEG_INFINITY,
            fallback_used: true,
        }
    }
}

/// Natural-log emission scores, one row per observation and one column per
/// real tag.
pub fn log_emissions(model: &TrainedModel, obs: &[ObservationKey]) -> Vec<Vec<f64>> {
    obs.iter()
        .map(|o| model.emission_scores(o).into_iter().map(f64::ln).collect())
        .collect()
}

/// Recomputes the log-score of a complete tag sequence term by term.
pub fn score_sequence(model: &TrainedModel, obs: &[ObservationKey], tags: &[TagId]) -> f64 {
    let emissions = log_emissions(model, obs);
    score_with(model, &emissions, tags)
}

fn score_with(model: &TrainedModel, emissions: &[Vec<f64>], tags: &[TagId]) -> f64 {
    let set = model.tag_set();
    let (mut prev2, mut prev1) = (set.bos1(), set.bos2());
    let mut score = 0.0;
    for (e, &t) in emissions.iter().zip(tags) {
        score += model.log_transition(prev2, prev1, t);
        score += e[t.index()];
        prev2 = prev1;
        prev1 = t;
    }
    score + model.log_transition(prev2, prev1, set.eos())
}

/// Most probable tag sequence for `obs`.
pub fn viterbi(model: &TrainedModel, obs: &[ObservationKey]) -> Result<Decoding> {
    viterbi_scores(model, &log_emissions(model, obs))
}

/// Viterbi over caller-supplied log-emission rows (see [`log_emissions`]).
/// Each row must hold one entry per real tag.
pub fn viterbi_scores(model: &TrainedModel, emissions: &[Vec<f64>]) -> Result<Decoding> {
    if emissions.is_empty() {
        return Err(Error::EmptyInput);
    }
    let set = model.tag_set();
    if set.is_empty() {
        return Err(Error::EmptyTagSet);
    }
    assert!(
        emissions.iter().all(|row| row.len() == set.len()),
        "emission rows must have one entry per tag"
    );
    let n = emissions.len();
    let k = set.num_symbols();

    // State (a, b) lives at a * k + b: tag b at the current position, a before it.
    let mut delta = vec![f64::NEG_INFINITY; k * k];
    let mut next = vec![f64::NEG_INFINITY; k * k];
    let mut backptr = vec![u32::MAX; n * k * k];
    let start = set.bos1().index() * k + set.bos2().index();
    delta[start] = 0.0;
    let mut active = vec![start];
    let mut next_active = Vec::new();

    for (i, e) in emissions.iter().enumerate() {
        let support: Vec<usize> = (0..set.len())
            .filter(|&c| e[c] > f64::NEG_INFINITY)
            .collect();
        let bp = &mut backptr[i * k * k..(i + 1) * k * k];
        next_active.clear();
        for &state in &active {
            let (a, b) = (state / k, state % k);
            let base = delta[state];
            for &c in &support {
                let mut cand =
                    base + model.log_transition(TagId(a as u32), TagId(b as u32), TagId(c as u32));
                cand += e[c];
                let target = b * k + c;
                if cand > next[target] {
                    if next[target] == f64::NEG_INFINITY {
                        next_active.push(target);
                    }
                    next[target] = cand;
                    bp[target] = a as u32;
                }
            }
        }
        for &state in &active {
            delta[state] = f64::NEG_INFINITY;
        }
        std::mem::swap(&mut delta, &mut next);
        std::mem::swap(&mut active, &mut next_active);
        active.sort_unstable();
    }

    let eos = set.eos();
    let mut best = f64::NEG_INFINITY;
    let mut best_state = None;
    for &state in &active {
        let (a, b) = (state / k, state % k);
        let score = delta[state] + model.log_transition(TagId(a as u32), TagId(b as u32), eos);
        if score > best {
            best = score;
            best_state = Some(state);
        }
    }
    let Some(mut state) = best_state else {
        return Ok(Decoding::fallback(model, n));
    };

    let mut tags = vec![TagId(0); n];
    for i in (0..n).rev() {
        let (a, b) = (state / k, state % k);
        tags[i] = TagId(b as u32);
        let r = backptr[i * k * k + state] as usize;
        state = r * k + a;
    }
    Ok(Decoding {
        tags,
        log_score: best,
        fallback_used: false,
    })
}

/// Exhaustive search over every tag sequence, with the same scoring and
/// tie-breaking as [`viterbi`]. Only for small inputs.
pub fn brute_force_decode(model: &TrainedModel, obs: &[ObservationKey]) -> Result<Decoding> {
    let set = model.tag_set();
    if set.is_empty() {
        return Err(Error::EmptyTagSet);
    }
    if obs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (n, num_tags) = (obs.len(), set.len());
    if n > BRUTE_FORCE_MAX_LEN || num_tags > BRUTE_FORCE_MAX_TAGS {
        return Err(Error::TooLarge {
            len: n,
            tags: num_tags,
            max_len: BRUTE_FORCE_MAX_LEN,
            max_tags: BRUTE_FORCE_MAX_TAGS,
        });
    }
    let emissions = log_emissions(model, obs);
    let tie_key = |tags: &[TagId]| -> Vec<usize> {
        let prev = if n >= 2 {
            tags[n - 2].index()
        } else {
            set.bos2().index()
        };
        let mut key = vec![prev, tags[n - 1].index()];
        key.extend(tags[..n.saturating_sub(2)].iter().rev().map(|t| t.index()));
        key
    };

    let mut seq = vec![TagId(0); n];
    let mut best: Option<(f64, Vec<usize>, Vec<TagId>)> = None;
    loop {
        let score = score_with(model, &emissions, &seq);
        if score > f64::NEG_INFINITY {
            let better = match &best {
                None => true,
                Some((s, key, _)) => score > *s || (score == *s && tie_key(&seq) < *key),
            };
            if better {
                best = Some((score, tie_key(&seq), seq.clone()));
            }
        }
        // Odometer increment.
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(match best {
                    Some((log_score, _, tags)) => Decoding {
                        tags,
                        log_score,
                        fallback_used: false,
                    },
                    None => Decoding::fallback(model, n),
                });
            }
            pos -= 1;
            if seq[pos].index() + 1 < num_tags {
                seq[pos] = TagId(seq[pos].0 + 1);
                break;
            }
            seq[pos] = TagId(0);
        }
    }
}

/// Tags one sentence, returning the decoding details alongside the copy.
pub fn tag_sentence_detailed(
    model: &TrainedModel,
    sentence: &Sentence,
) -> Result<(Sentence, Decoding)> {
    let obs: Vec<ObservationKey> = sentence.iter().map(|t| model.observation(t)).collect();
    let decoding = viterbi(model, &obs)?;
    let mut tagged = sentence.clone();
    for (token, &tag) in tagged.tokens_mut().iter_mut().zip(&decoding.tags) {
        token.pos_tag = Some(model.tag_set().name(tag).to_owned());
    }
    Ok((tagged, decoding))
}

/// Tags one sentence. Meta-tags are used internally only; the output carries
/// the original word, language tag and the predicted POS tag.
pub fn tag_sentence(model: &TrainedModel, sentence: &Sentence) -> Result<Sentence> {
    tag_sentence_detailed(model, sentence).map(|(s, _)| s)
}

/// Tags many sentences in parallel; output order matches input order.
pub fn tag_corpus(model: &TrainedModel, sentences: &[Sentence]) -> Result<Vec<Sentence>> {
    sentences
        .par_iter()
        .map(|s| tag_sentence(model, s))
        .collect()
}
