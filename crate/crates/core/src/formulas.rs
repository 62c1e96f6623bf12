//! Closed forms: classical counting sequences, backward differences, ballot
//! numbers, the per-pattern refined counts, and the column generating
//! functions of the Motzkin-pair triangle.
//!
//! Row indices are permutation lengths (`n >= 1`) everywhere in the public
//! API. The Motzkin-pair material is naturally indexed from zero in both
//! directions: the series `column_gf(k)` has coefficient `[x^n]` equal to the
//! number of avoiders of length `n + 1` ending with `k + 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{classify, Family};
use crate::exact;
use crate::oracle::Statistic;
use crate::pattern::PatternSet;
use crate::series::{SeriesError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("no closed form is known for pattern set {0}")]
    Unsupported(String),
    #[error("entry value {k} is outside 1..={n}")]
    OutOfRange { n: usize, k: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceName {
    Bell,
    Catalan,
    Motzkin,
    Involution,
}

impl SequenceName {
    pub const ALL: [SequenceName; 4] = [
        SequenceName::Bell,
        SequenceName::Catalan,
        SequenceName::Motzkin,
        SequenceName::Involution,
    ];
}

impl fmt::Display for SequenceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SequenceName::Bell => "bell",
            SequenceName::Catalan => "catalan",
            SequenceName::Motzkin => "motzkin",
            SequenceName::Involution => "involution",
        })
    }
}

impl FromStr for SequenceName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SequenceName::ALL
            .into_iter()
            .find(|n| n.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown sequence {s:?}"))
    }
}

/// The first `values.len()` terms of a named sequence, indexed from 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceTable {
    pub name: SequenceName,
    #[serde(with = "exact::list")]
    pub values: Vec<BigUint>,
}

impl SequenceTable {
    pub fn compute(name: SequenceName, len: usize) -> Self {
        let values = match name {
            SequenceName::Bell => bell_numbers(len),
            SequenceName::Catalan => catalan_numbers(len),
            SequenceName::Motzkin => motzkin_numbers(len),
            SequenceName::Involution => involution_numbers(len),
        };
        SequenceTable { name, values }
    }
}

/// `B_0..B_{len-1}` from the Bell triangle: each row starts with the last
/// entry of the previous row, and each next entry adds the entry above-left.
pub fn bell_numbers(len: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(len);
    let mut row = vec![BigUint::one()];
    for _ in 0..len {
        out.push(row[0].clone());
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().cloned().unwrap_or_default());
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    out
}

/// `C_{n+1} = sum C_i C_{n-i}`.
pub fn catalan_numbers(len: usize) -> Vec<BigUint> {
    let mut c: Vec<BigUint> = Vec::with_capacity(len);
    for n in 0..len {
        let v = if n == 0 {
            BigUint::one()
        } else {
            (0..n).map(|i| &c[i] * &c[n - 1 - i]).sum()
        };
        c.push(v);
    }
    c
}

/// `M_{n+1} = M_n + sum_{i=0}^{n-1} M_i M_{n-1-i}`.
pub fn motzkin_numbers(len: usize) -> Vec<BigUint> {
    let mut m: Vec<BigUint> = Vec::with_capacity(len);
    for n in 0..len {
        let v = if n == 0 {
            BigUint::one()
        } else {
            let conv: BigUint = (0..n - 1).map(|i| &m[i] * &m[n - 2 - i]).sum();
            &m[n - 1] + conv
        };
        m.push(v);
    }
    m
}

/// `I_n = I_{n-1} + (n-1) I_{n-2}`.
pub fn involution_numbers(len: usize) -> Vec<BigUint> {
    let mut t: Vec<BigUint> = Vec::with_capacity(len);
    for n in 0..len {
        let v = if n < 2 {
            BigUint::one()
        } else {
            &t[n - 1] + &t[n - 2] * BigUint::from(n - 1)
        };
        t.push(v);
    }
    t
}

pub fn bell(n: usize) -> BigUint {
    bell_numbers(n + 1).pop().unwrap()
}

pub fn catalan(n: usize) -> BigUint {
    catalan_numbers(n + 1).pop().unwrap()
}

pub fn motzkin(n: usize) -> BigUint {
    motzkin_numbers(n + 1).pop().unwrap()
}

pub fn involutions(n: usize) -> BigUint {
    involution_numbers(n + 1).pop().unwrap()
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `(k/n) C(2n-k-1, n-1)`; zero outside `1 <= k <= n`.
pub fn ballot(n: usize, k: usize) -> BigUint {
    if k == 0 || k > n {
        return BigUint::zero();
    }
    let (n, k) = (n as u64, k as u64);
    binomial(2 * n - k - 1, n - 1) * k / n
}

/// `(nabla^order a)_i` for every index `i >= order`: element `j` of the
/// result sits at index `j + order` of `seq`.
pub fn backward_difference(seq: &[BigInt], order: usize) -> Vec<BigInt> {
    let mut cur = seq.to_vec();
    for _ in 0..order {
        cur = cur.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    cur
}

/// `(nabla^order a)_n = sum_i (-1)^i C(order, i) a_{n-i}`, or `None` when it
/// would reach outside the sequence.
pub fn backward_difference_at(seq: &[BigInt], order: usize, n: usize) -> Option<BigInt> {
    if n >= seq.len() || n < order {
        return None;
    }
    let mut acc = BigInt::zero();
    for i in 0..=order {
        let term = BigInt::from(binomial(order as u64, i as u64)) * &seq[n - i];
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Some(acc)
}

fn bell_signed(len: usize) -> Vec<BigInt> {
    bell_numbers(len).into_iter().map(BigInt::from).collect()
}

fn to_count(v: BigInt) -> BigUint {
    debug_assert!(!v.is_negative(), "refined count came out negative");
    v.to_biguint().unwrap_or_default()
}

/// Statistic the closed forms of `ps` refer to, if any.
pub fn closed_form_statistic(ps: &PatternSet) -> Option<Statistic> {
    classify(ps).map(|c| c.statistic)
}

/// Number of avoiders of `ps` of length `n` whose first or last entry (see
/// [`closed_form_statistic`]) equals `k`.
pub fn closed_form_count(ps: &PatternSet, n: usize, k: usize) -> Result<BigUint, FormulaError> {
    let case = classify(ps).ok_or_else(|| FormulaError::Unsupported(ps.to_string()))?;
    if k == 0 || k > n {
        return Err(FormulaError::OutOfRange { n, k });
    }
    let j = case.column(n, k);
    let count = match case.family {
        // 1 -> B_{n-1}; j >= 2 -> nabla^{j-2} B_{n-1}
        Family::BellShifted => {
            let b = bell_signed(n);
            if j == 1 {
                to_count(b[n - 1].clone())
            } else {
                to_count(backward_difference_at(&b, j - 2, n - 1).expect("in range"))
            }
        }
        // n -> B_{n-1}; j < n -> nabla^{j-1} B_{n-1}
        Family::BellPlain => {
            let b = bell_signed(n);
            if j == n {
                to_count(b[n - 1].clone())
            } else {
                to_count(backward_difference_at(&b, j - 1, n - 1).expect("in range"))
            }
        }
        Family::Catalan => ballot(n, j),
        // ending with 1: I_{n-1}; ending with any k >= 2: I_{n-2}
        Family::InvolutionPair => {
            if j == 1 {
                involutions(n - 1)
            } else {
                involutions(n - 2)
            }
        }
        Family::MotzkinPair => {
            let table = motzkin_pair_table(n);
            to_count(table[n - 1][j - 1].clone())
        }
    };
    Ok(count)
}

/// Row `n` of [`closed_form_count`], entries `k = 1..=n`.
pub fn closed_form_row(ps: &PatternSet, n: usize) -> Result<Vec<BigUint>, FormulaError> {
    (1..=n).map(|k| closed_form_count(ps, n, k)).collect()
}

/// `|S_n(ps)|` from the counting sequence of the class.
pub fn closed_form_total(ps: &PatternSet, n: usize) -> Option<BigUint> {
    Some(match classify(ps)?.family {
        Family::BellShifted | Family::BellPlain => bell(n),
        Family::Catalan => catalan(n),
        Family::InvolutionPair => involutions(n),
        Family::MotzkinPair => motzkin(n),
    })
}

/// Rows `0..rows` (0-based; row `r` holds length `r + 1`) and columns
/// `0..=rows` of the Motzkin-pair triangle, filled from
/// `a(r, c) = a(r, c-1) - a(r-1, c-1) - a(r-2, c-2)` for `c >= 2`.
///
/// Columns 0 and 1 are `M_r` and `M_r - [r = 0]`. The row before the first
/// is the empty permutation, counted once in column 0; every other entry
/// outside the table is zero.
pub fn motzkin_pair_table(rows: usize) -> Vec<Vec<BigInt>> {
    let m: Vec<BigInt> = motzkin_numbers(rows)
        .into_iter()
        .map(BigInt::from)
        .collect();
    let cols = rows + 1;
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(rows);
    let at = |a: &Vec<Vec<BigInt>>, r: isize, c: usize| -> BigInt {
        match r {
            -1 if c == 0 => BigInt::one(),
            r if r < 0 => BigInt::zero(),
            r => a[r as usize][c].clone(),
        }
    };
    for (r, m_r) in m.iter().enumerate().take(rows) {
        let mut row = Vec::with_capacity(cols);
        row.push(m_r.clone());
        row.push(if r == 0 { BigInt::zero() } else { m_r.clone() });
        for c in 2..cols {
            let v = &row[c - 1] - at(&a, r as isize - 1, c - 1) - at(&a, r as isize - 2, c - 2);
            row.push(v);
        }
        a.push(row);
    }
    a
}

/// `M(x) = (1 - x - sqrt(1 - 2x - 3x^2)) / (2x^2)` through `x^order`,
/// using the exact series square root.
pub fn motzkin_gf(order: usize) -> Result<TruncatedSeries, FormulaError> {
    let wide = order + 2;
    let radicand = TruncatedSeries::from_coeffs([1, -2, -3], wide);
    let numerator = &TruncatedSeries::from_coeffs([1, -1], wide) - &radicand.sqrt()?;
    Ok(numerator.shift_down(2)?.div_exact(&BigInt::from(2))?)
}

/// Generating function of column `k` (0-based) of the Motzkin-pair triangle:
/// `C_0 = M`, and `C_k = x^{2(k-1)} M^{k-1} (M - 1)` for `k >= 1`.
pub fn column_gf(k: usize, order: usize) -> Result<TruncatedSeries, FormulaError> {
    let m = motzkin_gf(order)?;
    if k == 0 {
        return Ok(m);
    }
    let m_minus_one = &m - &TruncatedSeries::one(order);
    Ok((&m.pow(k as u32 - 1) * &m_minus_one).shift_up(2 * (k - 1)))
}
