//! Which pattern sets have a known refined enumeration, and how their
//! statistic maps onto the column index of the underlying triangle.

use crate::eco::BuiltinRule;
use crate::oracle::Statistic;
use crate::pattern::PatternSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Class of `1-23`: the Bell triangle obtained by moving the diagonal of
    /// the ECO matrix into the first column.
    BellShifted,
    /// Class of `3-12`: the ECO matrix itself.
    BellPlain,
    /// Class of `2-13`: the Catalan triangle of ballot numbers.
    Catalan,
    /// `{1-23, 1-32}`, counted by involutions.
    InvolutionPair,
    /// `{1-23, 21-3}` (equivalently with `12-3` added), counted by Motzkin numbers.
    MotzkinPair,
}

impl Family {
    pub fn rule(self) -> BuiltinRule {
        match self {
            Family::BellShifted | Family::BellPlain => BuiltinRule::OmegaBell,
            Family::Catalan => BuiltinRule::Catalan,
            Family::InvolutionPair => BuiltinRule::PairInvolution,
            Family::MotzkinPair => BuiltinRule::PhiMotzkin,
        }
    }
}

/// A supported pattern set together with its recorded statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Case {
    pub family: Family,
    pub statistic: Statistic,
    /// Values are read through `k -> n + 1 - k`.
    pub flipped: bool,
}

impl Case {
    /// Column of the family's triangle holding the count for entry value `k`
    /// at length `n`.
    pub fn column(&self, n: usize, k: usize) -> usize {
        if self.flipped {
            n + 1 - k
        } else {
            k
        }
    }
}

pub fn classify(ps: &PatternSet) -> Option<Case> {
    use Family::*;
    use Statistic::*;
    let key = ps.to_string();
    let (family, statistic, flipped) = match key.as_str() {
        "1-23" => (BellShifted, Last, false),
        "32-1" => (BellShifted, First, false),
        "3-21" => (BellShifted, Last, true),
        "12-3" => (BellShifted, First, true),
        "3-12" => (BellPlain, Last, false),
        "21-3" => (BellPlain, First, false),
        "1-32" => (BellPlain, Last, true),
        "23-1" => (BellPlain, First, true),
        "2-13" => (Catalan, Last, false),
        "31-2" => (Catalan, First, false),
        "2-31" => (Catalan, Last, true),
        "13-2" => (Catalan, First, true),
        "1-23,1-32" => (InvolutionPair, Last, false),
        "1-23,21-3" | "1-23,12-3,21-3" => (MotzkinPair, Last, false),
        _ => return None,
    };
    Some(Case {
        family,
        statistic,
        flipped,
    })
}
