//! Succession rules, generating-tree expansion and ECO matrices.
//!
//! A generating tree is never materialised: each level is a histogram
//! `label -> multiplicity`, and the next level is the multiset union of the
//! productions of the current one. Level-dependent labels `(k, n)` are stored
//! as the bare value `k`; the level `n` is passed to the production function.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{classify, Family};
use crate::exact;
use crate::oracle::RefinedDistribution;
use crate::pattern::PatternSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EcoError {
    #[error("unknown rule {0:?} (expected OMEGA_BELL, CATALAN, PAIR_INVOLUTION or PHI_MOTZKIN)")]
    UnknownRule(String),
    #[error("matrix is not a square label histogram; the diagonal cannot be moved")]
    NotShiftable,
    #[error("no statistic table is known for pattern set {0}")]
    Unsupported(String),
    #[error("pattern set {patterns} is generated by {expected}, not {given}")]
    RuleMismatch {
        patterns: String,
        expected: BuiltinRule,
        given: BuiltinRule,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Color {
    Plain,
    Barred,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label {
    pub color: Color,
    pub value: u32,
}

impl Label {
    pub const fn plain(value: u32) -> Self {
        Label {
            color: Color::Plain,
            value,
        }
    }

    pub const fn barred(value: u32) -> Self {
        Label {
            color: Color::Barred,
            value,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.color {
            Color::Plain => write!(f, "({})", self.value),
            Color::Barred => write!(f, "(~{})", self.value),
        }
    }
}

/// Children of one label, with multiplicities.
pub type Production = Vec<(Label, u64)>;
pub type Histogram = BTreeMap<Label, BigUint>;

type ProduceFn = dyn Fn(Label, usize) -> Production + Send + Sync;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BuiltinRule {
    /// `(2)`, `(k, n) -> (2)(3)...(k)(n+2)`.
    OmegaBell,
    /// `(2)`, `(k) -> (2)(3)...(k+1)`.
    Catalan,
    /// `(2)`, `(1, n) -> (n+2)`, `(n+1, n) -> (1)^n (n+2)`.
    PairInvolution,
    /// Colored: `(~2)`, `(~k) -> (~2)(2)...(k)`, `(k) -> (2)...(k)(~(k+1))`.
    PhiMotzkin,
}

impl BuiltinRule {
    pub const ALL: [BuiltinRule; 4] = [
        BuiltinRule::OmegaBell,
        BuiltinRule::Catalan,
        BuiltinRule::PairInvolution,
        BuiltinRule::PhiMotzkin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinRule::OmegaBell => "OMEGA_BELL",
            BuiltinRule::Catalan => "CATALAN",
            BuiltinRule::PairInvolution => "PAIR_INVOLUTION",
            BuiltinRule::PhiMotzkin => "PHI_MOTZKIN",
        }
    }

    fn axiom(self) -> Label {
        match self {
            BuiltinRule::PhiMotzkin => Label::barred(2),
            _ => Label::plain(2),
        }
    }

    fn produce(self, label: Label, level: usize) -> Production {
        let n = level as u32;
        let run = |lo: u32, hi: u32| (lo..=hi).map(|v| (Label::plain(v), 1));
        match self {
            BuiltinRule::OmegaBell => run(2, label.value)
                .chain(std::iter::once((Label::plain(n + 2), 1)))
                .collect(),
            BuiltinRule::Catalan => run(2, label.value + 1).collect(),
            // Reachable labels at level n are 1 and n + 1 only.
            BuiltinRule::PairInvolution => {
                if label.value == 1 {
                    vec![(Label::plain(n + 2), 1)]
                } else {
                    vec![(Label::plain(1), u64::from(n)), (Label::plain(n + 2), 1)]
                }
            }
            BuiltinRule::PhiMotzkin => match label.color {
                Color::Barred => std::iter::once((Label::barred(2), 1))
                    .chain(run(2, label.value))
                    .collect(),
                Color::Plain => run(2, label.value)
                    .chain(std::iter::once((Label::barred(label.value + 1), 1)))
                    .collect(),
            },
        }
    }
}

impl fmt::Display for BuiltinRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinRule {
    type Err = EcoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_uppercase().replace('-', "_");
        BuiltinRule::ALL
            .into_iter()
            .find(|r| r.name() == key)
            .ok_or_else(|| EcoError::UnknownRule(s.to_string()))
    }
}

/// An axiom plus a production function `(label, level) -> children`.
#[derive(Clone)]
pub struct SuccessionRule {
    name: String,
    builtin: Option<BuiltinRule>,
    axiom: Label,
    produce: Arc<ProduceFn>,
}

impl fmt::Debug for SuccessionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SuccessionRule")
            .field("name", &self.name)
            .field("axiom", &self.axiom)
            .finish_non_exhaustive()
    }
}

impl SuccessionRule {
    pub fn builtin(rule: BuiltinRule) -> Self {
        SuccessionRule {
            name: rule.name().to_string(),
            builtin: Some(rule),
            axiom: rule.axiom(),
            produce: Arc::new(move |label, level| rule.produce(label, level)),
        }
    }

    pub fn custom<F>(name: impl Into<String>, axiom: Label, produce: F) -> Self
    where
        F: Fn(Label, usize) -> Production + Send + Sync + 'static,
    {
        SuccessionRule {
            name: name.into(),
            builtin: None,
            axiom,
            produce: Arc::new(produce),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn builtin_kind(&self) -> Option<BuiltinRule> {
        self.builtin
    }

    pub fn axiom(&self) -> Label {
        self.axiom
    }

    /// Children of `label` sitting at `level` (1-based; the axiom is level 1).
    pub fn produce(&self, label: Label, level: usize) -> Production {
        (self.produce)(label, level)
    }

    /// Label histograms of levels `1..=depth`.
    pub fn expand(&self, depth: usize) -> Vec<Histogram> {
        let mut levels = Vec::with_capacity(depth);
        if depth == 0 {
            return levels;
        }
        let mut current = Histogram::new();
        current.insert(self.axiom, BigUint::from(1u32));
        for level in 1..depth {
            let mut next = Histogram::new();
            for (label, count) in &current {
                for (child, mult) in self.produce(*label, level) {
                    *next.entry(child).or_default() += count * mult;
                }
            }
            levels.push(std::mem::replace(&mut current, next));
        }
        levels.push(current);
        levels
    }
}

pub fn builtin_rule(name: &str) -> Result<SuccessionRule, EcoError> {
    name.parse().map(SuccessionRule::builtin)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixKind {
    /// Entries count labels of a generating-tree level.
    LabelHistogram,
    /// Entries count permutations by length and entry value.
    StatisticTable,
}

/// Exact non-negative matrix with 1-based rows; rows may differ in length
/// and read as zero past their end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountMatrix {
    pub kind: MatrixKind,
    #[serde(with = "exact::nested")]
    rows: Vec<Vec<BigUint>>,
}

impl CountMatrix {
    pub fn new(kind: MatrixKind, rows: Vec<Vec<BigUint>>) -> Self {
        CountMatrix { kind, rows }
    }

    pub fn depth(&self) -> usize {
        self.rows.len()
    }

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

    pub fn get(&self, n: usize, k: usize) -> BigUint {
        self.row(n)
            .and_then(|r| k.checked_sub(1).and_then(|k| r.get(k)))
            .cloned()
            .unwrap_or_default()
    }

    /// Column `k` read down rows `1..=depth`.
    pub fn column(&self, k: usize) -> Vec<BigUint> {
        (1..=self.depth()).map(|n| self.get(n, k)).collect()
    }

    pub fn row_sum(&self, n: usize) -> BigUint {
        self.row(n).map(|r| r.iter().sum()).unwrap_or_default()
    }
}

fn count(h: &Histogram, label: Label) -> BigUint {
    h.get(&label).cloned().unwrap_or_default()
}

/// ECO matrix of `rule` with `depth` rows.
///
/// Column conventions:
/// * `OMEGA_BELL`, `CATALAN`: column `j` counts label `j + 1`;
/// * `PAIR_INVOLUTION`: column `j` counts label `j`;
/// * `PHI_MOTZKIN`: column 1 counts all barred labels, column `j >= 2`
///   counts plain label `j`;
/// * custom rules: column `j` counts labels of value `j`, either color.
///
/// Each row ends at its last column that can be nonzero.
pub fn eco_matrix(rule: &SuccessionRule, depth: usize) -> CountMatrix {
    let rows = rule
        .expand(depth)
        .iter()
        .map(|h| match rule.builtin_kind() {
            Some(BuiltinRule::OmegaBell | BuiltinRule::Catalan) => {
                let width = h.keys().map(|l| l.value).max().unwrap_or(1) - 1;
                (1..=width).map(|j| count(h, Label::plain(j + 1))).collect()
            }
            Some(BuiltinRule::PairInvolution) => {
                let width = h.keys().map(|l| l.value).max().unwrap_or(0);
                (1..=width).map(|j| count(h, Label::plain(j))).collect()
            }
            Some(BuiltinRule::PhiMotzkin) => {
                let width = h
                    .keys()
                    .filter(|l| l.color == Color::Plain)
                    .map(|l| l.value)
                    .max()
                    .unwrap_or(1);
                let barred: BigUint = h
                    .iter()
                    .filter(|(l, _)| l.color == Color::Barred)
                    .map(|(_, c)| c)
                    .sum();
                std::iter::once(barred)
                    .chain((2..=width).map(|j| count(h, Label::plain(j))))
                    .collect()
            }
            None => {
                let width = h.keys().map(|l| l.value).max().unwrap_or(0);
                let mut row = vec![BigUint::default(); width as usize];
                for (l, c) in h {
                    row[l.value as usize - 1] += c;
                }
                row
            }
        })
        .collect();
    CountMatrix::new(MatrixKind::LabelHistogram, rows)
}

/// Moves the diagonal into the first column: row `n` of the result is
/// `[m(n,n), m(n,1), ..., m(n,n-1)]`.
pub fn shift_diagonal(m: &CountMatrix) -> Result<CountMatrix, EcoError> {
    if m.kind != MatrixKind::LabelHistogram || m.rows().any(|(n, r)| r.len() != n) {
        return Err(EcoError::NotShiftable);
    }
    let rows = m
        .rows()
        .map(|(n, r)| {
            std::iter::once(r[n - 1].clone())
                .chain(r[..n - 1].iter().cloned())
                .collect()
        })
        .collect();
    Ok(CountMatrix::new(MatrixKind::StatisticTable, rows))
}

/// Refined distribution of `ps` read off the generating tree of `rule`.
pub fn statistic_table(
    rule: BuiltinRule,
    depth: usize,
    ps: &PatternSet,
) -> Result<RefinedDistribution, EcoError> {
    let case = classify(ps).ok_or_else(|| EcoError::Unsupported(ps.to_string()))?;
    let expected = case.family.rule();
    if expected != rule {
        return Err(EcoError::RuleMismatch {
            patterns: ps.to_string(),
            expected,
            given: rule,
        });
    }
    let m = eco_matrix(&SuccessionRule::builtin(rule), depth);
    let table: Box<dyn Fn(usize, usize) -> BigUint> = match case.family {
        Family::BellShifted => {
            let a = shift_diagonal(&m)?;
            Box::new(move |n, j| a.get(n, j))
        }
        Family::BellPlain | Family::Catalan | Family::MotzkinPair => {
            Box::new(move |n, j| m.get(n, j))
        }
        // A length-(n-1) avoider ending with 1 (label n) has exactly one
        // child ending with each of 2..=n, all with label 1.
        Family::InvolutionPair => Box::new(move |n, j| {
            if j == 1 {
                m.get(n, n + 1)
            } else {
                m.get(n - 1, n)
            }
        }),
    };
    let rows = (1..=depth)
        .map(|n| (1..=n).map(|k| table(n, case.column(n, k))).collect())
        .collect();
    Ok(RefinedDistribution::from_rows(case.statistic, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nums(r: &[BigUint]) -> Vec<u64> {
        r.iter().map(|c| u64::try_from(c).unwrap()).collect()
    }

    fn children(rule: BuiltinRule, label: Label, level: usize) -> Vec<Label> {
        rule.produce(label, level)
            .into_iter()
            .flat_map(|(l, m)| std::iter::repeat_n(l, m as usize))
            .collect()
    }

    #[test]
    fn catalog_productions() {
        assert_eq!(
            children(BuiltinRule::OmegaBell, Label::plain(3), 3),
            vec![Label::plain(2), Label::plain(3), Label::plain(5)]
        );
        assert_eq!(
            children(BuiltinRule::Catalan, Label::plain(2), 7),
            vec![Label::plain(2), Label::plain(3)]
        );
        assert_eq!(
            children(BuiltinRule::PhiMotzkin, Label::barred(2), 1),
            vec![Label::barred(2), Label::plain(2)]
        );
        assert_eq!(
            children(BuiltinRule::PairInvolution, Label::plain(4), 3),
            vec![
                Label::plain(1),
                Label::plain(1),
                Label::plain(1),
                Label::plain(5)
            ]
        );
        assert_eq!(
            children(BuiltinRule::PairInvolution, Label::plain(1), 3),
            vec![Label::plain(5)]
        );
    }

    #[test]
    fn rule_names() {
        assert_eq!(
            "omega-bell".parse::<BuiltinRule>().unwrap(),
            BuiltinRule::OmegaBell
        );
        assert_eq!(builtin_rule("PHI_MOTZKIN").unwrap().name(), "PHI_MOTZKIN");
        assert!(matches!(
            builtin_rule("SCHRODER"),
            Err(EcoError::UnknownRule(_))
        ));
    }

    #[test]
    fn expansion_totals() {
        let total = |h: &Histogram| h.values().sum::<BigUint>();
        let omega = SuccessionRule::builtin(BuiltinRule::OmegaBell).expand(3);
        assert_eq!(total(&omega[2]), 5u32.into());
        let phi = SuccessionRule::builtin(BuiltinRule::PhiMotzkin).expand(4);
        let totals: Vec<BigUint> = phi.iter().map(total).collect();
        assert_eq!(totals, [1u32, 2, 4, 9].map(BigUint::from));
        for rule in BuiltinRule::ALL {
            let one = SuccessionRule::builtin(rule).expand(1);
            assert_eq!(one.len(), 1);
            assert_eq!(one[0].len(), 1);
            assert_eq!(one[0].get(&rule.axiom()), Some(&BigUint::from(1u32)));
        }
        assert!(SuccessionRule::builtin(BuiltinRule::Catalan)
            .expand(0)
            .is_empty());
    }

    #[test]
    fn printed_rows() {
        let m = eco_matrix(&SuccessionRule::builtin(BuiltinRule::OmegaBell), 6);
        assert_eq!(nums(m.row(6).unwrap()), [52, 37, 27, 20, 15, 52]);
        let m = eco_matrix(&SuccessionRule::builtin(BuiltinRule::PairInvolution), 7);
        assert_eq!(nums(m.row(7).unwrap()), [156, 0, 0, 0, 0, 0, 0, 76]);
        let m = eco_matrix(&SuccessionRule::builtin(BuiltinRule::PhiMotzkin), 10);
        assert_eq!(nums(m.row(10).unwrap()), [835, 835, 385, 113, 19, 1]);
    }

    #[test]
    fn diagonal_shift() {
        let m = eco_matrix(&SuccessionRule::builtin(BuiltinRule::OmegaBell), 6);
        let a = shift_diagonal(&m).unwrap();
        assert_eq!(a.kind, MatrixKind::StatisticTable);
        assert_eq!(nums(a.row(1).unwrap()), [1]);
        assert_eq!(nums(a.row(4).unwrap()), [5, 5, 3, 2]);
        assert_eq!(nums(a.row(6).unwrap()), [52, 52, 37, 27, 20, 15]);
        assert_eq!(shift_diagonal(&a), Err(EcoError::NotShiftable));
        let pair = eco_matrix(&SuccessionRule::builtin(BuiltinRule::PairInvolution), 3);
        assert_eq!(shift_diagonal(&pair), Err(EcoError::NotShiftable));
    }

    #[test]
    fn reindexed_tables() {
        let ps = |s: &str| s.parse::<PatternSet>().unwrap();
        let t = statistic_table(BuiltinRule::OmegaBell, 6, &ps("3-21")).unwrap();
        assert_eq!(t.get(6, 6), 52u32.into());
        let t = statistic_table(BuiltinRule::Catalan, 5, &ps("2-31")).unwrap();
        assert_eq!(t.get(5, 5), 14u32.into());
        let t = statistic_table(BuiltinRule::Catalan, 5, &ps("13-2")).unwrap();
        assert_eq!(t.get(5, 1), 1u32.into());
        assert!(matches!(
            statistic_table(BuiltinRule::Catalan, 5, &ps("1-23")),
            Err(EcoError::RuleMismatch { .. })
        ));
        assert!(matches!(
            statistic_table(BuiltinRule::Catalan, 5, &ps("1-2-3")),
            Err(EcoError::Unsupported(_))
        ));
    }

    #[test]
    fn custom_rule() {
        // (1) -> (1)(1): complete binary tree
        let rule = SuccessionRule::custom("binary", Label::plain(1), |l, _| vec![(l, 2)]);
        let m = eco_matrix(&rule, 5);
        assert_eq!(nums(m.row(5).unwrap()), [16]);
        assert_eq!(rule.builtin_kind(), None);
    }
}
