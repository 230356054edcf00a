//! Bit-vector sets over a bounded 1-based universe.
//!
//! Houses and set elements are integers in `[1, u]` for a per-instance
//! universe size `u`. Everything downstream (families, matchings, pair
//! systems) is built on [`FiniteSet`], so membership, unions and
//! cardinalities are word-level operations.

use std::cmp::Ordering;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Hard cap on universe sizes. All desk-scale experiments fit comfortably.
pub const MAX_UNIVERSE: usize = 1024;

const BITS: usize = 64;

/// The universe `{1, …, u}` that sets and preference rows draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundSet {
    size: usize,
}

impl GroundSet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidInput("universe size must be at least 1".into()));
        }
        if size > MAX_UNIVERSE {
            return Err(Error::InvalidInput(format!(
                "universe size {size} exceeds the supported maximum {MAX_UNIVERSE}"
            )));
        }
        Ok(GroundSet { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, element: usize) -> bool {
        (1..=self.size).contains(&element)
    }

    /// The set `{1, …, u}` itself.
    pub fn full_set(&self) -> FiniteSet {
        FiniteSet::from_elements(1..=self.size).expect("ground set elements are valid")
    }
}

/// A finite subset of `{1, …, MAX_UNIVERSE}` with bit-vector semantics.
///
/// Trailing zero words are trimmed so that `Eq`/`Hash` see a canonical
/// representation. `Ord` compares the ascending element lists
/// lexicographically, which is the order used everywhere a "lexicographically
/// smallest" witness or set is promised.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FiniteSet {
    blocks: Vec<u64>,
}

impl FiniteSet {
    pub fn empty() -> Self {
        FiniteSet { blocks: Vec::new() }
    }

    /// Builds a set from 1-based elements. Rejects element 0 or anything
    /// beyond [`MAX_UNIVERSE`]; duplicates are harmless.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Result<Self> {
        let mut set = FiniteSet::empty();
        for e in elements {
            set.insert(e)?;
        }
        Ok(set)
    }

    pub fn insert(&mut self, element: usize) -> Result<()> {
        if element == 0 || element > MAX_UNIVERSE {
            return Err(Error::InvalidInput(format!(
                "set element {element} outside [1, {MAX_UNIVERSE}]"
            )));
        }
        let bit = element - 1;
        let word = bit / BITS;
        if word >= self.blocks.len() {
            self.blocks.resize(word + 1, 0);
        }
        self.blocks[word] |= 1 << (bit % BITS);
        Ok(())
    }

    pub fn remove(&mut self, element: usize) {
        if element == 0 {
            return;
        }
        let bit = element - 1;
        let word = bit / BITS;
        if word < self.blocks.len() {
            self.blocks[word] &= !(1 << (bit % BITS));
            self.trim();
        }
    }

    pub fn contains(&self, element: usize) -> bool {
        if element == 0 {
            return false;
        }
        let bit = element - 1;
        let word = bit / BITS;
        word < self.blocks.len() && self.blocks[word] & (1 << (bit % BITS)) != 0
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Elements in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(w, &block)| {
            let mut b = block;
            std::iter::from_fn(move || {
                if b == 0 {
                    None
                } else {
                    let tz = b.trailing_zeros() as usize;
                    b &= b - 1;
                    Some(w * BITS + tz + 1)
                }
            })
        })
    }

    pub fn min_element(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn union(&self, other: &FiniteSet) -> FiniteSet {
        let mut blocks = vec![0u64; self.blocks.len().max(other.blocks.len())];
        for (i, b) in blocks.iter_mut().enumerate() {
            *b = self.blocks.get(i).copied().unwrap_or(0) | other.blocks.get(i).copied().unwrap_or(0);
        }
        let mut out = FiniteSet { blocks };
        out.trim();
        out
    }

    pub fn union_with(&mut self, other: &FiniteSet) {
        if other.blocks.len() > self.blocks.len() {
            self.blocks.resize(other.blocks.len(), 0);
        }
        for (i, &b) in other.blocks.iter().enumerate() {
            self.blocks[i] |= b;
        }
    }

    pub fn intersection(&self, other: &FiniteSet) -> FiniteSet {
        let n = self.blocks.len().min(other.blocks.len());
        let mut out = FiniteSet {
            blocks: (0..n).map(|i| self.blocks[i] & other.blocks[i]).collect(),
        };
        out.trim();
        out
    }

    pub fn difference(&self, other: &FiniteSet) -> FiniteSet {
        let mut out = FiniteSet {
            blocks: self
                .blocks
                .iter()
                .enumerate()
                .map(|(i, &b)| b & !other.blocks.get(i).copied().unwrap_or(0))
                .collect(),
        };
        out.trim();
        out
    }

    pub fn intersection_len(&self, other: &FiniteSet) -> usize {
        let n = self.blocks.len().min(other.blocks.len());
        (0..n)
            .map(|i| (self.blocks[i] & other.blocks[i]).count_ones() as usize)
            .sum()
    }

    pub fn difference_len(&self, other: &FiniteSet) -> usize {
        self.blocks
            .iter()
            .enumerate()
            .map(|(i, &b)| (b & !other.blocks.get(i).copied().unwrap_or(0)).count_ones() as usize)
            .sum()
    }

    pub fn is_disjoint(&self, other: &FiniteSet) -> bool {
        self.intersection_len(other) == 0
    }

    pub fn is_subset_of(&self, other: &FiniteSet) -> bool {
        self.blocks
            .iter()
            .enumerate()
            .all(|(i, &b)| b & !other.blocks.get(i).copied().unwrap_or(0) == 0)
    }

    /// Largest element allowed by the blocks actually stored; used to infer a
    /// universe when parsing external files.
    pub fn max_element(&self) -> Option<usize> {
        self.iter().last()
    }

    pub fn validate_in(&self, universe: &GroundSet) -> Result<()> {
        match self.max_element() {
            Some(max) if max > universe.size() => Err(Error::InvalidInput(format!(
                "element {max} outside universe [1, {}]",
                universe.size()
            ))),
            _ => Ok(()),
        }
    }

    fn trim(&mut self) {
        while self.blocks.last() == Some(&0) {
            self.blocks.pop();
        }
    }
}

impl FromIterator<usize> for FiniteSet {
    /// Panics on out-of-range elements; use [`FiniteSet::from_elements`] for
    /// fallible construction from untrusted data.
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        FiniteSet::from_elements(iter).expect("elements in range")
    }
}

impl Ord for FiniteSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => match x.cmp(&y) {
                    Ordering::Equal => continue,
                    ord => return ord,
                },
            }
        }
    }
}

impl PartialOrd for FiniteSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FiniteSet {
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

impl Serialize for FiniteSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for FiniteSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let elements = Vec::<usize>::deserialize(deserializer)?;
        FiniteSet::from_elements(elements).map_err(D::Error::custom)
    }
}
