//! Permutations, generalized (dashed) patterns and their symmetries.
//!
//! A generalized pattern is written as blocks of digits separated by dashes,
//! e.g. `13-2`. Letters inside one block must occupy adjacent positions of a
//! permutation; a dash allows an arbitrary gap. Reversal treats the dash as a
//! letter of its own, complementation leaves it in place.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("empty pattern")]
    Empty,
    #[error("unexpected character {ch:?} at offset {offset}")]
    BadCharacter { ch: char, offset: usize },
    #[error("empty block at offset {offset} (leading, trailing or doubled dash)")]
    EmptyBlock { offset: usize },
    #[error("letters of {text:?} are not a permutation of 1..{len}")]
    NotPermutation { text: String, len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("cannot parse {token:?} as a permutation entry")]
    BadToken { token: String },
    #[error("values {values:?} are not a permutation of 1..{len}")]
    NotPermutation { values: Vec<u32>, len: usize },
}

/// A permutation of `1..=n` stored as its one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Self, PermutationError> {
        if !is_permutation(&values) {
            let len = values.len();
            return Err(PermutationError::NotPermutation { values, len });
        }
        Ok(Permutation { values })
    }

    /// Caller guarantees that `values` is a permutation of `1..=n`.
    pub(crate) fn from_values_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(is_permutation(&values));
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Entry at 1-based position `i`.
    pub fn get(&self, i: usize) -> Option<u32> {
        i.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    pub fn first(&self) -> Option<u32> {
        self.values.first().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.values.last().copied()
    }

    pub fn reverse(&self) -> Self {
        Permutation {
            values: self.values.iter().rev().copied().collect(),
        }
    }

    pub fn complement(&self) -> Self {
        let top = self.values.len() as u32 + 1;
        Permutation {
            values: self.values.iter().map(|&v| top - v).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Accepts `"7 2 5 6 1 3 4"`, `"7,2,5,6,1,3,4"` and, when there is no
/// separator at all, a run of single digits such as `"7256134"`.
impl FromStr for Permutation {
    type Err = PermutationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let values: Vec<u32> = if s.contains(|c: char| c == ',' || c.is_whitespace()) {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>().map_err(|_| PermutationError::BadToken {
                        token: t.to_string(),
                    })
                })
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10).ok_or_else(|| PermutationError::BadToken {
                        token: c.to_string(),
                    })
                })
                .collect::<Result<_, _>>()?
        };
        Permutation::new(values)
    }
}

fn is_permutation(values: &[u32]) -> bool {
    let n = values.len();
    let mut seen = vec![false; n];
    for &v in values {
        if v == 0 || v as usize > n || seen[v as usize - 1] {
            return false;
        }
        seen[v as usize - 1] = true;
    }
    true
}

/// A dashed pattern such as `1-23`, stored as its list of blocks.
///
/// Ordering is lexicographic on the block lists, which gives `PatternSet`
/// a deterministic iteration order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneralizedPattern {
    blocks: Vec<Vec<u8>>,
}

impl GeneralizedPattern {
    pub fn new(blocks: Vec<Vec<u8>>) -> Result<Self, PatternError> {
        if blocks.is_empty() {
            return Err(PatternError::Empty);
        }
        let pattern = GeneralizedPattern { blocks };
        let letters: Vec<u32> = pattern.letters().map(u32::from).collect();
        if pattern.blocks.iter().any(Vec::is_empty) || !is_permutation(&letters) {
            return Err(PatternError::NotPermutation {
                text: pattern.to_string(),
                len: letters.len(),
            });
        }
        Ok(pattern)
    }

    /// Every block of length one: the classical pattern `a-b-c-...`.
    pub fn classical(letters: &[u8]) -> Result<Self, PatternError> {
        Self::new(letters.iter().map(|&l| vec![l]).collect())
    }

    pub fn parse(text: &str) -> Result<Self, PatternError> {
        if text.is_empty() {
            return Err(PatternError::Empty);
        }
        let mut blocks = Vec::new();
        let mut current = Vec::new();
        for (offset, ch) in text.char_indices() {
            match ch {
                '1'..='9' => current.push(ch as u8 - b'0'),
                '-' => {
                    if current.is_empty() {
                        return Err(PatternError::EmptyBlock { offset });
                    }
                    blocks.push(std::mem::take(&mut current));
                }
                _ => return Err(PatternError::BadCharacter { ch, offset }),
            }
        }
        if current.is_empty() {
            return Err(PatternError::EmptyBlock { offset: text.len() });
        }
        blocks.push(current);
        Self::new(blocks)
    }

    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.blocks
    }

    /// Letters of all blocks in order.
    pub fn letters(&self) -> impl Iterator<Item = u8> + '_ {
        self.blocks.iter().flatten().copied()
    }

    /// Total number of letters.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn type_signature(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn is_classical(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn reverse(&self) -> Self {
        GeneralizedPattern {
            blocks: self
                .blocks
                .iter()
                .rev()
                .map(|b| b.iter().rev().copied().collect())
                .collect(),
        }
    }

    pub fn complement(&self) -> Self {
        let top = self.len() as u8 + 1;
        GeneralizedPattern {
            blocks: self
                .blocks
                .iter()
                .map(|b| b.iter().map(|&l| top - l).collect())
                .collect(),
        }
    }

    pub fn reverse_complement(&self) -> Self {
        self.reverse().complement()
    }

    /// `{p, p^r, p^c, p^rc}`; may have fewer than four members.
    pub fn symmetry_class(&self) -> BTreeSet<GeneralizedPattern> {
        let rc = self.reverse().complement();
        debug_assert_eq!(rc, self.complement().reverse());
        [self.clone(), self.reverse(), self.complement(), rc]
            .into_iter()
            .collect()
    }
}

impl fmt::Display for GeneralizedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("-")?;
            }
            for l in block {
                write!(f, "{l}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for GeneralizedPattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GeneralizedPattern::parse(s)
    }
}

/// A finite set of forbidden patterns.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternSet {
    patterns: BTreeSet<GeneralizedPattern>,
}

impl PatternSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses a comma-separated list such as `1-23,21-3`.
    pub fn parse(text: &str) -> Result<Self, PatternError> {
        text.split(',')
            .map(|t| GeneralizedPattern::parse(t.trim()))
            .collect()
    }

    pub fn insert(&mut self, p: GeneralizedPattern) -> bool {
        self.patterns.insert(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GeneralizedPattern> + '_ {
        self.patterns.iter()
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn contains(&self, p: &GeneralizedPattern) -> bool {
        self.patterns.contains(p)
    }

    pub fn is_subset(&self, other: &PatternSet) -> bool {
        self.patterns.is_subset(&other.patterns)
    }

    pub fn reverse(&self) -> Self {
        self.iter().map(GeneralizedPattern::reverse).collect()
    }

    pub fn complement(&self) -> Self {
        self.iter().map(GeneralizedPattern::complement).collect()
    }
}

impl FromIterator<GeneralizedPattern> for PatternSet {
    fn from_iter<I: IntoIterator<Item = GeneralizedPattern>>(iter: I) -> Self {
        PatternSet {
            patterns: iter.into_iter().collect(),
        }
    }
}

impl From<GeneralizedPattern> for PatternSet {
    fn from(p: GeneralizedPattern) -> Self {
        std::iter::once(p).collect()
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.patterns.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for PatternSet {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PatternSet::parse(s)
    }
}

/// The twelve dashed patterns of length three with exactly one dash.
pub fn length_three_patterns() -> Vec<GeneralizedPattern> {
    [
        "1-23", "12-3", "1-32", "13-2", "3-12", "31-2", "2-13", "21-3", "2-31", "23-1", "3-21",
        "32-1",
    ]
    .iter()
    .map(|s| GeneralizedPattern::parse(s).expect("catalog pattern"))
    .collect()
}
