//! Exhaustive enumeration of `S_n(P)`: the ground truth every other route
//! is checked against.
//!
//! Permutations are built left to right in lexicographic order. A prefix is
//! extended only while it avoids every pattern, and since earlier prefixes
//! were already clean, only occurrences ending at the newest entry need to be
//! checked. The `n` subtrees rooted at the first entry are independent and
//! are counted in parallel; results are merged by exact addition in a fixed
//! order, so the output does not depend on scheduling.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact;
use crate::matcher::contains_ending_at_last;
use crate::pattern::{PatternSet, Permutation};

pub const DEFAULT_CAP: usize = 11;
/// Hard ceiling independent of the configurable cap (bit-set width).
const MAX_SUPPORTED: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("length {n} exceeds the enumeration cap of {cap}")]
    ResourceCap { n: usize, cap: usize },
    #[error("could not start worker pool: {0}")]
    ThreadPool(String),
}

/// Which end of the permutation is recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    First,
    Last,
}

impl Statistic {
    pub fn of(self, pi: &Permutation) -> Option<u32> {
        match self {
            Statistic::First => pi.first(),
            Statistic::Last => pi.last(),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Statistic::First => Statistic::Last,
            Statistic::Last => Statistic::First,
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistic::First => "first",
            Statistic::Last => "last",
        })
    }
}

impl FromStr for Statistic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "first" => Ok(Statistic::First),
            "last" => Ok(Statistic::Last),
            _ => Err(format!("unknown statistic {s:?} (expected first or last)")),
        }
    }
}

/// Counts of avoiders of each length refined by their first or last entry.
///
/// `rows[n - 1][k - 1]` is the number of avoiders of length `n` whose
/// recorded entry equals `k`; every row `n` has exactly `n` entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinedDistribution {
    pub statistic: Statistic,
    #[serde(with = "exact::nested")]
    rows: Vec<Vec<BigUint>>,
}

impl RefinedDistribution {
    /// Rows must be `1, 2, ..., n_max` entries long.
    pub fn from_rows(statistic: Statistic, rows: Vec<Vec<BigUint>>) -> Self {
        assert!(
            rows.iter().enumerate().all(|(i, r)| r.len() == i + 1),
            "row n must have n entries"
        );
        RefinedDistribution { statistic, rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len()
    }

    /// 1-based row; `None` outside `1..=n_max`.
    pub fn row(&self, n: usize) -> Option<&[BigUint]> {
        n.checked_sub(1)
            .and_then(|i| self.rows.get(i))
            .map(Vec::as_slice)
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &[BigUint])> + '_ {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| (i + 1, r.as_slice()))
    }

    /// Zero for `k > n` or `k == 0`.
    pub fn get(&self, n: usize, k: usize) -> BigUint {
        self.row(n)
            .and_then(|r| k.checked_sub(1).and_then(|k| r.get(k)))
            .cloned()
            .unwrap_or_default()
    }

    pub fn total(&self, n: usize) -> BigUint {
        self.row(n).map(|r| r.iter().sum()).unwrap_or_default()
    }
}

#[derive(Debug, Clone)]
pub struct Oracle {
    cap: usize,
    jobs: Option<usize>,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            cap: DEFAULT_CAP,
            jobs: None,
        }
    }
}

impl Oracle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap.min(MAX_SUPPORTED);
        self
    }

    /// `None` uses every available core.
    pub fn with_jobs(mut self, jobs: Option<usize>) -> Self {
        self.jobs = jobs.filter(|&j| j > 0);
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check(&self, n: usize) -> Result<(), OracleError> {
        if n > self.cap {
            Err(OracleError::ResourceCap { n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    fn run<T, F>(&self, job: F) -> Result<T, OracleError>
    where
        T: Send,
        F: FnOnce() -> T + Send,
    {
        match self.jobs {
            None => Ok(job()),
            Some(j) => rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map(|pool| pool.install(job))
                .map_err(|e| OracleError::ThreadPool(e.to_string())),
        }
    }

    /// `|S_n(ps)|`.
    pub fn count_avoiders(&self, n: usize, ps: &PatternSet) -> Result<BigUint, OracleError> {
        self.check(n)?;
        if n == 0 {
            // the empty permutation avoids everything
            return Ok(BigUint::from(1u32));
        }
        let row = self.run(|| tally(n, ps, Statistic::Last))?;
        Ok(row.into_iter().map(BigUint::from).sum())
    }

    /// Every avoider of length `n`, in lexicographic order.
    pub fn avoiders(&self, n: usize, ps: &PatternSet) -> Result<Vec<Permutation>, OracleError> {
        self.check(n)?;
        if n == 0 {
            return Ok(vec![Permutation::identity(0)]);
        }
        self.run(|| {
            (1..=n as u32)
                .into_par_iter()
                .map(|first| {
                    let mut out = Vec::new();
                    walk(n, ps, first, &mut |values| {
                        out.push(Permutation::from_values_unchecked(values.to_vec()))
                    });
                    out
                })
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect()
        })
    }

    /// Rows `1..=n_max` of the refined distribution.
    pub fn refined_distribution(
        &self,
        n_max: usize,
        ps: &PatternSet,
        statistic: Statistic,
    ) -> Result<RefinedDistribution, OracleError> {
        self.check(n_max)?;
        let rows = self.run(|| {
            (1..=n_max)
                .map(|n| {
                    tally(n, ps, statistic)
                        .into_iter()
                        .map(BigUint::from)
                        .collect()
                })
                .collect()
        })?;
        Ok(RefinedDistribution::from_rows(statistic, rows))
    }
}

pub fn count_avoiders(n: usize, ps: &PatternSet) -> Result<BigUint, OracleError> {
    Oracle::default().count_avoiders(n, ps)
}

pub fn refined_distribution(
    n_max: usize,
    ps: &PatternSet,
    statistic: Statistic,
) -> Result<RefinedDistribution, OracleError> {
    Oracle::default().refined_distribution(n_max, ps, statistic)
}

/// Per-value counts for length `n` (index `k - 1`), parallel over the first entry.
fn tally(n: usize, ps: &PatternSet, statistic: Statistic) -> Vec<u64> {
    (1..=n as u32)
        .into_par_iter()
        .map(|first| {
            let mut row = vec![0u64; n];
            walk(n, ps, first, &mut |values| {
                let v = match statistic {
                    Statistic::First => values[0],
                    Statistic::Last => values[n - 1],
                };
                row[v as usize - 1] += 1;
            });
            row
        })
        .reduce(
            || vec![0u64; n],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// Visits every avoider of length `n` starting with `first`, in lexicographic order.
fn walk(n: usize, ps: &PatternSet, first: u32, visit: &mut dyn FnMut(&[u32])) {
    let mut prefix = Vec::with_capacity(n);
    prefix.push(first);
    if ps.iter().any(|p| contains_ending_at_last(&prefix, p)) {
        return;
    }
    extend(n, ps, &mut prefix, 1u64 << first, visit);
}

fn extend(
    n: usize,
    ps: &PatternSet,
    prefix: &mut Vec<u32>,
    used: u64,
    visit: &mut dyn FnMut(&[u32]),
) {
    if prefix.len() == n {
        visit(prefix);
        return;
    }
    for v in 1..=n as u32 {
        if used & (1u64 << v) != 0 {
            continue;
        }
        prefix.push(v);
        if !ps.iter().any(|p| contains_ending_at_last(prefix, p)) {
            extend(n, ps, prefix, used | (1u64 << v), visit);
        }
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcher::avoids;

    fn ps(s: &str) -> PatternSet {
        s.parse().unwrap()
    }

    fn row(d: &RefinedDistribution, n: usize) -> Vec<u64> {
        d.row(n)
            .unwrap()
            .iter()
            .map(|c| u64::try_from(c).unwrap())
            .collect()
    }

    /// Plain filter over every permutation, independent of the pruned walk.
    fn unpruned(n: usize, set: &PatternSet) -> Vec<Permutation> {
        fn heap(k: usize, a: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if k <= 1 {
                out.push(a.clone());
                return;
            }
            for i in 0..k {
                heap(k - 1, a, out);
                let j = if k.is_multiple_of(2) { i } else { 0 };
                a.swap(j, k - 1);
            }
        }
        let mut all = Vec::new();
        heap(n, &mut (1..=n as u32).collect(), &mut all);
        let mut kept: Vec<Permutation> = all
            .into_iter()
            .map(|v| Permutation::new(v).unwrap())
            .filter(|pi| avoids(pi, set))
            .collect();
        kept.sort();
        kept
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_avoiders(3, &ps("1-23")).unwrap(), 5u32.into());
        assert_eq!(count_avoiders(6, &ps("2-13")).unwrap(), 132u32.into());
        assert_eq!(count_avoiders(0, &ps("1-23")).unwrap(), 1u32.into());
        assert_eq!(count_avoiders(1, &ps("1-23")).unwrap(), 1u32.into());
    }

    #[test]
    fn pruned_walk_matches_plain_filter() {
        for set in ["1-23", "13-2", "1-23,21-3", "2-1-3", "231"] {
            let set = ps(set);
            for n in 0..=6 {
                assert_eq!(Oracle::new().avoiders(n, &set).unwrap(), unpruned(n, &set));
            }
        }
    }

    #[test]
    fn distribution_rows() {
        let d = refined_distribution(6, &ps("1-23"), Statistic::Last).unwrap();
        assert_eq!(row(&d, 3), vec![2, 2, 1]);
        assert_eq!(row(&d, 6), vec![52, 52, 37, 27, 20, 15]);
        let d = refined_distribution(6, &ps("1-23,21-3"), Statistic::Last).unwrap();
        assert_eq!(row(&d, 6), vec![21, 21, 8, 1, 0, 0]);
        assert_eq!(d.get(6, 7), BigUint::default());
        assert_eq!(d.total(6), 51u32.into());
    }

    #[test]
    fn cap_is_enforced() {
        let err = count_avoiders(12, &ps("1-23")).unwrap_err();
        assert_eq!(err, OracleError::ResourceCap { n: 12, cap: 11 });
        assert!(Oracle::new()
            .with_cap(5)
            .count_avoiders(6, &ps("1-23"))
            .is_err());
    }

    #[test]
    fn job_count_does_not_change_results() {
        let set = ps("3-12");
        let serial =
            Oracle::new()
                .with_jobs(Some(1))
                .refined_distribution(7, &set, Statistic::First);
        let wide = Oracle::new()
            .with_jobs(Some(4))
            .refined_distribution(7, &set, Statistic::First);
        assert_eq!(serial.unwrap(), wide.unwrap());
    }
}
