//! Consistency suites comparing the oracle, the generating-tree engine and
//! the closed forms.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::catalog::classify;
use crate::eco::{
    eco_matrix, shift_diagonal, statistic_table, BuiltinRule, CountMatrix, SuccessionRule,
};
use crate::fixtures;
use crate::formulas::{
    bell, catalan, closed_form_row, column_gf, involutions, motzkin, motzkin_numbers,
};
use crate::oracle::{Oracle, OracleError};
use crate::pattern::{length_three_patterns, PatternSet};
use crate::series::TruncatedSeries;

pub const WILF_MAX: usize = 9;
pub const REFINED_MAX: usize = 8;
pub const PAIR_COUNT_MAX: usize = 9;
pub const PAIR_SET_MAX: usize = 8;
pub const INVOLUTION_ROWS: usize = 25;
pub const MOTZKIN_ROWS: usize = 30;
pub const GF_COLUMNS: usize = 6;
pub const GF_COLUMN_ORDER: usize = 14;
pub const GF_RECURRENCE_K: usize = 8;
pub const GF_ORDER: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Wilf,
    Refined,
    Eco,
    Pairs,
    Gf,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Wilf,
        Suite::Refined,
        Suite::Eco,
        Suite::Pairs,
        Suite::Gf,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Wilf => "wilf",
            Suite::Refined => "refined",
            Suite::Eco => "eco",
            Suite::Pairs => "pairs",
            Suite::Gf => "gf",
        })
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                format!("unknown suite {s:?} (expected wilf, refined, eco, pairs or gf)")
            })
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<8} {} ({} checks, {} failed)",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks,
            self.failures.len()
        )
    }
}

pub fn run(suite: Suite, oracle: &Oracle) -> Result<SuiteReport, OracleError> {
    let mut r = SuiteReport::new(suite);
    match suite {
        Suite::Wilf => wilf(&mut r, oracle)?,
        Suite::Refined => refined(&mut r, oracle)?,
        Suite::Eco => eco(&mut r, oracle)?,
        Suite::Pairs => pairs(&mut r, oracle)?,
        Suite::Gf => gf(&mut r),
    }
    Ok(r)
}

/// Pattern sets with closed forms and generating trees.
pub fn supported_sets() -> Vec<PatternSet> {
    let mut sets: Vec<PatternSet> = length_three_patterns()
        .into_iter()
        .map(Into::into)
        .collect();
    sets.push("1-23,1-32".parse().expect("pair"));
    sets.push("1-23,21-3".parse().expect("pair"));
    sets
}

fn wilf(r: &mut SuiteReport, oracle: &Oracle) -> Result<(), OracleError> {
    for p in length_three_patterns() {
        let set = PatternSet::from(p.clone());
        let catalan_class = p
            .symmetry_class()
            .contains(&"2-13".parse().expect("pattern"));
        for n in 1..=WILF_MAX {
            let got = oracle.count_avoiders(n, &set)?;
            let want = if catalan_class { catalan(n) } else { bell(n) };
            r.check(got == want, || {
                format!("|S_{n}({p})| = {got}, expected {want}")
            });
        }
    }
    Ok(())
}

fn refined(r: &mut SuiteReport, oracle: &Oracle) -> Result<(), OracleError> {
    for set in supported_sets() {
        let case = classify(&set).expect("supported");
        let d = oracle.refined_distribution(REFINED_MAX, &set, case.statistic)?;
        for (n, row) in d.rows() {
            let formula = closed_form_row(&set, n).expect("supported");
            r.check(row == formula.as_slice(), || {
                format!("{set} n={n}: oracle {row:?} vs closed form {formula:?}")
            });
        }
    }
    Ok(())
}

/// Compares `m` with printed rows, treating missing entries as zero.
pub fn matches_rows(m: &CountMatrix, rows: &[&[u64]]) -> bool {
    rows.iter().enumerate().all(|(i, want)| {
        let n = i + 1;
        let width = want.len().max(m.row(n).map_or(0, <[_]>::len));
        (1..=width).all(|k| m.get(n, k) == BigUint::from(want.get(k - 1).copied().unwrap_or(0)))
    })
}

fn eco(r: &mut SuiteReport, oracle: &Oracle) -> Result<(), OracleError> {
    let matrix = |rule, depth| eco_matrix(&SuccessionRule::builtin(rule), depth);
    let omega = matrix(BuiltinRule::OmegaBell, fixtures::OMEGA_M.len());
    r.check(matches_rows(&omega, fixtures::OMEGA_M), || {
        "OMEGA_BELL M rows".into()
    });
    let shifted = shift_diagonal(&omega).expect("square");
    r.check(matches_rows(&shifted, fixtures::BELL_A), || {
        "Bell triangle A rows".into()
    });
    let cat = matrix(BuiltinRule::Catalan, fixtures::CATALAN_M.len());
    r.check(matches_rows(&cat, fixtures::CATALAN_M), || {
        "Catalan triangle rows".into()
    });
    let inv = matrix(BuiltinRule::PairInvolution, fixtures::INVOLUTION_M.len());
    r.check(matches_rows(&inv, fixtures::INVOLUTION_M), || {
        "PAIR_INVOLUTION rows".into()
    });
    let phi = matrix(BuiltinRule::PhiMotzkin, fixtures::MOTZKIN_A.len());
    r.check(matches_rows(&phi, fixtures::MOTZKIN_A), || {
        "PHI_MOTZKIN rows".into()
    });

    for set in supported_sets() {
        let case = classify(&set).expect("supported");
        let engine = statistic_table(case.family.rule(), REFINED_MAX, &set).expect("supported");
        let brute = oracle.refined_distribution(REFINED_MAX, &set, case.statistic)?;
        r.check(engine == brute, || {
            format!("{set}: engine table differs from oracle")
        });
    }
    Ok(())
}

/// Entry of the `PHI_MOTZKIN` matrix with the empty permutation as row 0.
fn phi_at(m: &CountMatrix, i: isize, j: usize) -> BigUint {
    match i {
        0 if j == 1 => BigUint::one(),
        i if i <= 0 => BigUint::default(),
        i => m.get(i as usize, j),
    }
}

fn phi_tail(m: &CountMatrix, i: isize, from: usize, width: usize) -> BigUint {
    (from.max(1)..=width).map(|k| phi_at(m, i, k)).sum()
}

fn pairs(r: &mut SuiteReport, oracle: &Oracle) -> Result<(), OracleError> {
    let inv_set: PatternSet = "1-23,1-32".parse().expect("pair");
    let motz_set: PatternSet = "1-23,21-3".parse().expect("pair");
    let motz_triple: PatternSet = "1-23,21-3,12-3".parse().expect("triple");
    for n in 1..=PAIR_COUNT_MAX {
        let got = oracle.count_avoiders(n, &inv_set)?;
        r.check(got == involutions(n), || {
            format!("|S_{n}(1-23,1-32)| = {got}")
        });
        let got = oracle.count_avoiders(n, &motz_set)?;
        r.check(got == motzkin(n), || format!("|S_{n}(1-23,21-3)| = {got}"));
    }
    for n in 1..=PAIR_SET_MAX {
        let a = oracle.avoiders(n, &motz_set)?;
        let b = oracle.avoiders(n, &motz_triple)?;
        r.check(a == b, || {
            format!("S_{n}(1-23,21-3) differs from S_{n}(1-23,21-3,12-3)")
        });
    }

    let m = eco_matrix(
        &SuccessionRule::builtin(BuiltinRule::PairInvolution),
        INVOLUTION_ROWS,
    );
    for n in 1..=INVOLUTION_ROWS {
        r.check(m.get(n, n + 1) == involutions(n - 1), || {
            format!("PAIR_INVOLUTION m({n},{}) != I_{}", n + 1, n - 1)
        });
        let off: bool = (2..=n).all(|k| m.get(n, k) == BigUint::default());
        r.check(off, || format!("PAIR_INVOLUTION row {n} has stray entries"));
        if n >= 2 {
            r.check(
                m.get(n, 1) == BigUint::from(n - 1) * m.get(n - 1, n),
                || format!("m({n},1) != (n-1) m({},{n})", n - 1),
            );
            r.check(m.get(n, n + 1) == m.get(n - 1, 1) + m.get(n - 1, n), || {
                format!("m({n},{}) != m({},1) + m({},{n})", n + 1, n - 1, n - 1)
            });
        }
    }

    let a = eco_matrix(
        &SuccessionRule::builtin(BuiltinRule::PhiMotzkin),
        MOTZKIN_ROWS,
    );
    let width = MOTZKIN_ROWS + 2;
    for i in 1..=MOTZKIN_ROWS as isize {
        let iu = i as usize;
        r.check(a.get(iu, 1) == phi_tail(&a, i - 1, 1, width), || {
            format!("PHI_MOTZKIN a({i},1) is not the previous row sum")
        });
        for j in 2..=width {
            let eq1 = phi_tail(&a, i - 1, j, width) + phi_tail(&a, i - 2, j - 1, width);
            r.check(a.get(iu, j) == eq1, || {
                format!("column recursion fails at ({i},{j})")
            });
            if j >= 3 {
                let lhs = BigInt::from(a.get(iu, j));
                let rhs = BigInt::from(a.get(iu, j - 1))
                    - BigInt::from(phi_at(&a, i - 1, j - 1))
                    - BigInt::from(phi_at(&a, i - 2, j - 2));
                r.check(lhs == rhs, || {
                    format!("difference recursion fails at ({i},{j})")
                });
            }
            if j >= iu / 2 + 2 {
                r.check(a.get(iu, j) == BigUint::default(), || {
                    format!("support bound fails at ({i},{j})")
                });
            }
        }
        r.check(a.row_sum(iu) == motzkin(iu), || {
            format!("row {i} sum is not M_{i}")
        });
    }
    Ok(())
}

fn gf(r: &mut SuiteReport) {
    let engine = eco_matrix(
        &SuccessionRule::builtin(BuiltinRule::PhiMotzkin),
        GF_COLUMN_ORDER + 1,
    );
    for k in 0..=GF_COLUMNS {
        let series = column_gf(k, GF_COLUMN_ORDER).expect("series");
        let column = engine.column(k + 1);
        let same = column
            .iter()
            .zip(series.coeffs())
            .all(|(e, s)| BigInt::from(e.clone()) == *s);
        r.check(same, || {
            format!("C_{k} differs from engine column {}", k + 1)
        });
    }

    let one_minus_x = TruncatedSeries::from_coeffs([1, -1], GF_ORDER);
    let x = TruncatedSeries::monomial(BigInt::one(), 1, GF_ORDER);
    for k in 0..=GF_RECURRENCE_K {
        let c = |i| column_gf(i, GF_ORDER).expect("series");
        let mut rhs = &(&one_minus_x * &c(k + 1)) - &c(k).shift_up(2);
        if k == 0 {
            // C_0 = M misses the empty permutation, which would sit at x^{-1}.
            rhs = &rhs - &x;
        }
        r.check(c(k + 2) == rhs, || {
            format!("column recurrence fails at k={k}")
        });
    }

    let m = column_gf(0, GF_ORDER).expect("series");
    let want: Vec<BigInt> = motzkin_numbers(GF_ORDER + 1)
        .into_iter()
        .map(BigInt::from)
        .collect();
    r.check(m.coeffs() == want.as_slice(), || {
        "C_0 is not the Motzkin series".into()
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!("GF".parse::<Suite>().unwrap(), Suite::Gf);
        assert!("all".parse::<Suite>().is_err());
    }

    #[test]
    fn fast_suites_pass() {
        let oracle = Oracle::new();
        for suite in [Suite::Gf, Suite::Eco] {
            let report = run(suite, &oracle).unwrap();
            assert!(report.passed(), "{report}: {:?}", report.failures);
            assert!(report.checks > 0);
        }
    }

    #[test]
    fn cap_propagates() {
        let small = Oracle::new().with_cap(4);
        assert!(matches!(
            run(Suite::Wilf, &small),
            Err(OracleError::ResourceCap { .. })
        ));
    }
}
