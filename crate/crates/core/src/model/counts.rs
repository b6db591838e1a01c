use std::collections::{BTreeMap, HashMap};

use super::tagset::{TagId, TagSet};
use crate::features::ObservationKey;

/// Per-observation tag counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ObservationCounts {
    pub(crate) total: u64,
    /// Sorted by tag id.
    pub(crate) by_tag: Vec<(TagId, u64)>,
}

impl ObservationCounts {
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn by_tag(&self) -> &[(TagId, u64)] {
        &self.by_tag
    }

    pub fn count(&self, tag: TagId) -> u64 {
        self.by_tag
            .binary_search_by_key(&tag, |&(t, _)| t)
            .map_or(0, |i| self.by_tag[i].1)
    }

    pub(crate) fn add(&mut self, tag: TagId, n: u64) {
        self.total += n;
        match self.by_tag.binary_search_by_key(&tag, |&(t, _)| t) {
            Ok(i) => self.by_tag[i].1 += n,
            Err(i) => self.by_tag.insert(i, (tag, n)),
        }
    }
}

/// Raw maximum-likelihood statistics.
///
/// Each training sentence contributes the padded tag sequence
/// `<BOS1> <BOS2> t_1 .. t_n <EOS>` to the n-gram tables. Unigram counts cover
/// every position that can condition a later tag, i.e. everything except
/// `<EOS>`. Observation counts cover real tokens only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTables {
    pub(crate) unigram: Vec<u64>,
    pub(crate) bigram: BTreeMap<(TagId, TagId), u64>,
    pub(crate) trigram: BTreeMap<(TagId, TagId, TagId), u64>,
    pub(crate) observations: HashMap<ObservationKey, ObservationCounts>,
    pub(crate) token_total: u64,
}

impl CountTables {
    pub(crate) fn empty(tags: &TagSet) -> Self {
        CountTables {
            unigram: vec![0; tags.num_symbols()],
            bigram: BTreeMap::new(),
            trigram: BTreeMap::new(),
            observations: HashMap::new(),
            token_total: 0,
        }
    }

    /// Adds one sentence given its real tag ids and observations.
    pub(crate) fn add_sentence(&mut self, tags: &TagSet, seq: &[TagId], obs: Vec<ObservationKey>) {
        let mut padded = Vec::with_capacity(seq.len() + 3);
        padded.push(tags.bos1());
        padded.push(tags.bos2());
        padded.extend_from_slice(seq);
        padded.push(tags.eos());

        for &t in &padded[..padded.len() - 1] {
            self.unigram[t.index()] += 1;
        }
        for w in padded.windows(2) {
            *self.bigram.entry((w[0], w[1])).or_insert(0) += 1;
        }
        for w in padded.windows(3) {
            *self.trigram.entry((w[0], w[1], w[2])).or_insert(0) += 1;
        }
        for (o, &t) in obs.into_iter().zip(seq) {
            self.observations.entry(o).or_default().add(t, 1);
        }
        self.token_total += seq.len() as u64;
    }

    pub fn unigram(&self, t: TagId) -> u64 {
        self.unigram.get(t.index()).copied().unwrap_or(0)
    }

    pub fn bigram(&self, t1: TagId, t2: TagId) -> u64 {
        self.bigram.get(&(t1, t2)).copied().unwrap_or(0)
    }

    pub fn trigram(&self, t1: TagId, t2: TagId, t3: TagId) -> u64 {
        self.trigram.get(&(t1, t2, t3)).copied().unwrap_or(0)
    }

    /// C(o, t).
    pub fn joint(&self, o: &ObservationKey, t: TagId) -> u64 {
        self.observations.get(o).map_or(0, |c| c.count(t))
    }

    /// C(o).
    pub fn obs_total(&self, o: &ObservationKey) -> u64 {
        self.observations.get(o).map_or(0, |c| c.total)
    }

    pub fn observation(&self, o: &ObservationKey) -> Option<&ObservationCounts> {
        self.observations.get(o)
    }

    /// Number of real training tokens, N.
    pub fn token_total(&self) -> u64 {
        self.token_total
    }

    pub fn bigrams(&self) -> impl Iterator<Item = ((TagId, TagId), u64)> + '_ {
        self.bigram.iter().map(|(&k, &v)| (k, v))
    }

    pub fn trigrams(&self) -> impl Iterator<Item = ((TagId, TagId, TagId), u64)> + '_ {
        self.trigram.iter().map(|(&k, &v)| (k, v))
    }

    pub fn observations(&self) -> impl Iterator<Item = (&ObservationKey, &ObservationCounts)> {
        self.observations.iter()
    }

    /// Observations sorted by key.
    pub fn sorted_observations(&self) -> Vec<(&ObservationKey, &ObservationCounts)> {
        let mut obs: Vec<_> = self.observations.iter().collect();
        obs.sort_unstable_by(|a, b| a.0.cmp(b.0));
        obs
    }

    pub fn num_observations(&self) -> usize {
        self.observations.len()
    }
}
