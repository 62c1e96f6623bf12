//! Occurrence detection for generalized patterns.
//!
//! The search places the pattern one block at a time. A block of length `b`
//! occupies `b` consecutive positions; consecutive blocks only need to be in
//! increasing position order. Order-isomorphism is checked letter by letter
//! against every letter placed before it, so mismatches are pruned as soon as
//! they appear. Everything here works on plain value slices with distinct
//! entries, so prefixes of permutations can be tested directly.

use std::ops::ControlFlow;

use crate::pattern::{GeneralizedPattern, PatternSet, Permutation};

struct Search<'a> {
    values: &'a [u32],
    letters: Vec<u8>,
    block_lens: Vec<usize>,
    /// `suffix_len[b]` = total letters in blocks `b..`.
    suffix_len: Vec<usize>,
    /// Fixed 0-based index for the final letter, if any.
    anchor_end: Option<usize>,
    positions: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(values: &'a [u32], pattern: &GeneralizedPattern, anchor_end: Option<usize>) -> Self {
        let block_lens = pattern.type_signature();
        let mut suffix_len = vec![0; block_lens.len() + 1];
        for b in (0..block_lens.len()).rev() {
            suffix_len[b] = suffix_len[b + 1] + block_lens[b];
        }
        Search {
            values,
            letters: pattern.letters().collect(),
            block_lens,
            suffix_len,
            anchor_end,
            positions: Vec::with_capacity(pattern.len()),
        }
    }

    fn consistent(&self, letter: usize, pos: usize) -> bool {
        let value = self.values[pos];
        let rank = self.letters[letter];
        self.positions
            .iter()
            .enumerate()
            .all(|(s, &q)| (self.letters[s] < rank) == (self.values[q] < value))
    }

    fn run<F>(&mut self, block: usize, min_start: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if block == self.block_lens.len() {
            return visit(&self.positions);
        }
        let n = self.values.len();
        let len = self.block_lens[block];
        let last_block = block + 1 == self.block_lens.len();
        let (lo, hi) = match self.anchor_end {
            Some(end) if last_block => {
                let start = (end + 1).checked_sub(len);
                match start {
                    Some(s) if s >= min_start => (s, s),
                    _ => return ControlFlow::Continue(()),
                }
            }
            Some(end) => {
                // The final block must still fit in front of the anchor.
                match (end + 1).checked_sub(self.suffix_len[block]) {
                    Some(hi) => (min_start, hi),
                    None => return ControlFlow::Continue(()),
                }
            }
            None => match n.checked_sub(self.suffix_len[block]) {
                Some(hi) => (min_start, hi),
                None => return ControlFlow::Continue(()),
            },
        };
        let first_letter = self.positions.len();
        for start in lo..=hi {
            let mut placed = 0;
            while placed < len && self.consistent(first_letter + placed, start + placed) {
                self.positions.push(start + placed);
                placed += 1;
            }
            let flow = if placed == len {
                self.run(block + 1, start + len, visit)
            } else {
                ControlFlow::Continue(())
            };
            self.positions.truncate(first_letter);
            flow?;
        }
        ControlFlow::Continue(())
    }
}

fn search<F>(values: &[u32], pattern: &GeneralizedPattern, anchor_end: Option<usize>, mut visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if pattern.len() > values.len() {
        return;
    }
    let _ = Search::new(values, pattern, anchor_end).run(0, 0, &mut visit);
}

/// All occurrences of `p` in `pi`, as 1-based position tuples in
/// lexicographic order.
pub fn occurrences(pi: &Permutation, p: &GeneralizedPattern) -> Vec<Vec<usize>> {
    let mut found = Vec::new();
    search(pi.values(), p, None, |pos| {
        found.push(pos.iter().map(|&i| i + 1).collect());
        ControlFlow::Continue(())
    });
    found
}

pub fn count_occurrences(values: &[u32], p: &GeneralizedPattern) -> usize {
    let mut count = 0;
    search(values, p, None, |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

/// True if `values` (distinct entries, not necessarily `1..=n`) contains `p`.
pub fn contains(values: &[u32], p: &GeneralizedPattern) -> bool {
    let mut hit = false;
    search(values, p, None, |_| {
        hit = true;
        ControlFlow::Break(())
    });
    hit
}

/// True if some occurrence of `p` uses the final entry of `values` as its
/// final letter. When every proper prefix already avoids `p`, this decides
/// whether `values` contains `p`.
pub fn contains_ending_at_last(values: &[u32], p: &GeneralizedPattern) -> bool {
    let Some(end) = values.len().checked_sub(1) else {
        return false;
    };
    let mut hit = false;
    search(values, p, Some(end), |_| {
        hit = true;
        ControlFlow::Break(())
    });
    hit
}

pub fn avoids(pi: &Permutation, ps: &PatternSet) -> bool {
    avoids_values(pi.values(), ps)
}

pub fn avoids_values(values: &[u32], ps: &PatternSet) -> bool {
    ps.iter().all(|p| !contains(values, p))
}
