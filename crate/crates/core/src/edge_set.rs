use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::graph::EdgeId;

/// A set of edge ids stored as a bitset.
///
/// Trailing zero words are trimmed so that equal sets compare and hash equal
/// regardless of how they were built. The ordering is the numeric order of the
/// bit encoding, which gives deterministic output order everywhere.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    words: SmallVec<[u64; 2]>,
}

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// All ids in `0..m`.
    pub fn full(m: usize) -> Self {
        let mut s = Self::new();
        for e in 0..m {
            s.insert(e);
        }
        s
    }

    /// Decode a subset of the first 64 edges from a bitmask.
    pub fn from_mask(mask: u64) -> Self {
        let mut words = SmallVec::new();
        if mask != 0 {
            words.push(mask);
        }
        EdgeSet { words }
    }

    /// The bitmask of this set, if every id is below 64.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, e: EdgeId) -> bool {
        let (w, b) = (e / 64, e % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, e: EdgeId) -> bool {
        let (w, b) = (e / 64, e % 64);
        if w >= self.words.len() {
            return false;
        }
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        self.trim();
        present
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        let (w, b) = (e / 64, e % 64);
        w < self.words.len() && self.words[w] & (1 << b) != 0
    }

    pub fn with(&self, e: EdgeId) -> Self {
        let mut s = self.clone();
        s.insert(e);
        s
    }

    pub fn without(&self, e: EdgeId) -> Self {
        let mut s = self.clone();
        s.remove(e);
        s
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    /// Smallest id in the set.
    pub fn first(&self) -> Option<EdgeId> {
        self.iter().next()
    }

    pub fn union(&self, other: &Self) -> Self {
        let n = self.words.len().max(other.words.len());
        let words = (0..n)
            .map(|i| self.word(i) | other.word(i))
            .collect::<SmallVec<_>>();
        let mut s = EdgeSet { words };
        s.trim();
        s
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let n = self.words.len().min(other.words.len());
        let words = (0..n)
            .map(|i| self.word(i) & other.word(i))
            .collect::<SmallVec<_>>();
        let mut s = EdgeSet { words };
        s.trim();
        s
    }

    pub fn difference(&self, other: &Self) -> Self {
        let words = (0..self.words.len())
            .map(|i| self.word(i) & !other.word(i))
            .collect::<SmallVec<_>>();
        let mut s = EdgeSet { words };
        s.trim();
        s
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        let n = self.words.len().max(other.words.len());
        let words = (0..n)
            .map(|i| self.word(i) ^ other.word(i))
            .collect::<SmallVec<_>>();
        let mut s = EdgeSet { words };
        s.trim();
        s
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        (0..self.words.len()).all(|i| self.word(i) & !other.word(i) == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }

    fn word(&self, i: usize) -> u64 {
        self.words.get(i).copied().unwrap_or(0)
    }

    pub fn to_vec(&self) -> Vec<EdgeId> {
        self.iter().collect()
    }
}

impl Ord for EdgeSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for EdgeSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<EdgeId> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = EdgeId>>(iter: I) -> Self {
        let mut s = EdgeSet::new();
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl<'a> FromIterator<&'a EdgeId> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = &'a EdgeId>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}
