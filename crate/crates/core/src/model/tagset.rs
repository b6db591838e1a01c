use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a tag in a [`TagSet`]. Real tags come first, in order of first
/// appearance in the training data, followed by the three boundary tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TagId(pub(crate) u32);

impl TagId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for TagId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// POS tag inventory plus the reserved sentence-boundary tags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagSet {
    tags: Vec<String>,
    index: HashMap<String, TagId>,
}

impl TagSet {
    /// First start-of-sentence filler (position -1).
    pub const BOS1: &'static str = "<BOS1>";
    /// Second start-of-sentence filler (position 0).
    pub const BOS2: &'static str = "<BOS2>";
    /// End of sentence (position n+1).
    pub const EOS: &'static str = "<EOS>";

    pub fn is_reserved(name: &str) -> bool {
        name == Self::BOS1 || name == Self::BOS2 || name == Self::EOS
    }

    /// Builds a tag set from real tag names; duplicates are ignored.
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = TagSet {
            tags: Vec::new(),
            index: HashMap::new(),
        };
        for name in names {
            set.intern(name.as_ref())?;
        }
        Ok(set)
    }

    pub(crate) fn intern(&mut self, name: &str) -> Result<TagId> {
        if let Some(&id) = self.index.get(name) {
            return Ok(id);
        }
        if Self::is_reserved(name) {
            return Err(Error::ReservedTag(name.to_owned()));
        }
        let id = TagId(self.tags.len() as u32);
        self.tags.push(name.to_owned());
        self.index.insert(name.to_owned(), id);
        Ok(id)
    }

    /// Number of real (non-boundary) tags.
    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    /// Real tags plus the three boundary tags.
    pub fn num_symbols(&self) -> usize {
        self.tags.len() + 3
    }

    pub fn bos1(&self) -> TagId {
        TagId(self.tags.len() as u32)
    }

    pub fn bos2(&self) -> TagId {
        TagId(self.tags.len() as u32 + 1)
    }

    pub fn eos(&self) -> TagId {
        TagId(self.tags.len() as u32 + 2)
    }

    pub fn is_boundary(&self, id: TagId) -> bool {
        id.index() >= self.tags.len()
    }

    /// Looks up a real or boundary tag by name.
    pub fn id(&self, name: &str) -> Option<TagId> {
        match name {
            Self::BOS1 => Some(self.bos1()),
            Self::BOS2 => Some(self.bos2()),
            Self::EOS => Some(self.eos()),
            _ => self.index.get(name).copied(),
        }
    }

    pub(crate) fn require(&self, name: &str) -> Result<TagId> {
        self.id(name)
            .ok_or_else(|| Error::UnknownTag(name.to_owned()))
    }

    pub(crate) fn require_real(&self, name: &str) -> Result<TagId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownTag(name.to_owned()))
    }

    pub fn name(&self, id: TagId) -> &str {
        let n = self.tags.len();
        match id.index() {
            i if i < n => &self.tags[i],
            i if i == n => Self::BOS1,
            i if i == n + 1 => Self::BOS2,
            _ => Self::EOS,
        }
    }

    /// Real tags in tag-set order.
    pub fn names(&self) -> &[String] {
        &self.tags
    }

    pub fn real_ids(&self) -> impl Iterator<Item = TagId> + Clone {
        (0..self.tags.len() as u32).map(TagId)
    }

    /// Every id, boundary tags last.
    pub fn all_ids(&self) -> impl Iterator<Item = TagId> + Clone {
        (0..self.num_symbols() as u32).map(TagId)
    }
}
