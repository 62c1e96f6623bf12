//! Enumeration of permutations avoiding generalized (dashed) patterns,
//! refined by the value of the first or last entry.
//!
//! Three independent routes produce the same tables:
//!
//! * [`oracle`]: exhaustive, pruned generation of the avoiders;
//! * [`eco`]: generating trees of succession rules, expanded as label
//!   histograms;
//! * [`formulas`]: closed forms (backward differences of Bell numbers,
//!   ballot numbers, involution numbers, Motzkin column series).
//!
//! ```
//! use vinculum::{formulas, oracle, PatternSet};
//!
//! let ps: PatternSet = "1-23".parse().unwrap();
//! let d = oracle::refined_distribution(5, &ps, oracle::Statistic::Last).unwrap();
//! assert_eq!(d.row(5).unwrap(), formulas::closed_form_row(&ps, 5).unwrap());
//! ```

pub mod catalog;
pub mod cli;
pub mod eco;
pub mod exact;
pub mod fixtures;
pub mod formulas;
pub mod matcher;
pub mod oeis;
pub mod oracle;
pub mod pattern;
pub mod report;
pub mod series;
pub mod verify;

pub use eco::{BuiltinRule, CountMatrix, Label, SuccessionRule};
pub use oracle::{RefinedDistribution, Statistic};
pub use pattern::{GeneralizedPattern, PatternSet, Permutation};
pub use series::TruncatedSeries;
