//! Truncated formal power series with exact integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("square root needs constant term 1")]
    NotUnitConstant,
    #[error("coefficient of x^{index} is not divisible by {divisor}")]
    InexactDivision { index: usize, divisor: BigInt },
    #[error("cannot divide by x^{shift}: coefficient of x^{index} is nonzero")]
    NonzeroLowTerm { shift: usize, index: usize },
}

/// `sum coeffs[i] x^i  mod x^(order + 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedSeries {
    #[serde(with = "exact::signed_list")]
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(BigInt::one(), 0, order)
    }

    /// `c x^e`, or zero when `e > order`.
    pub fn monomial(c: BigInt, e: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if e <= order {
            s.coeffs[e] = c;
        }
        s
    }

    /// Pads with zeros or truncates to `order`.
    pub fn from_coeffs<I, T>(coeffs: I, order: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut c: Vec<BigInt> = coeffs.into_iter().take(order + 1).map(Into::into).collect();
        c.resize(order + 1, BigInt::zero());
        TruncatedSeries { coeffs: c }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().cloned(), order)
    }

    /// Multiplication by `x^e`.
    pub fn shift_up(&self, e: usize) -> Self {
        let order = self.order();
        let mut s = Self::zero(order);
        for i in e..=order {
            s.coeffs[i] = self.coeffs[i - e].clone();
        }
        s
    }

    /// Division by `x^e`; the result has order `order - e`.
    pub fn shift_down(&self, e: usize) -> Result<Self, SeriesError> {
        if let Some(index) = self.coeffs.iter().take(e).position(|c| !c.is_zero()) {
            return Err(SeriesError::NonzeroLowTerm { shift: e, index });
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[e.min(self.coeffs.len() - 1)..].to_vec(),
        })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn div_exact(&self, d: &BigInt) -> Result<Self, SeriesError> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(index, a)| {
                let (q, r) = a.div_rem(d);
                if r.is_zero() {
                    Ok(q)
                } else {
                    Err(SeriesError::InexactDivision {
                        index,
                        divisor: d.clone(),
                    })
                }
            })
            .collect::<Result<_, _>>()
            .map(|coeffs| TruncatedSeries { coeffs })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Square root with constant term 1, solved coefficient by coefficient:
    /// `2 s_n = f_n - sum_{0<i<n} s_i s_{n-i}`. Fails unless every halving is exact.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::NotUnitConstant);
        }
        let two = BigInt::from(2);
        let mut s = vec![BigInt::one()];
        for n in 1..=self.order() {
            let mut rest = self.coeffs[n].clone();
            for i in 1..n {
                rest -= &s[i] * &s[n - i];
            }
            let (q, r) = rest.div_rem(&two);
            if !r.is_zero() {
                return Err(SeriesError::InexactDivision {
                    index: n,
                    divisor: two,
                });
            }
            s.push(q);
        }
        Ok(TruncatedSeries { coeffs: s })
    }
}

impl Add<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order)
                .map(|i| &self.coeffs[i] + &rhs.coeffs[i])
                .collect(),
        }
    }
}

impl Sub<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order)
                .map(|i| &self.coeffs[i] - &rhs.coeffs[i])
                .collect(),
        }
    }
}

impl Mul<&TruncatedSeries> for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut out = TruncatedSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(" + ")?;
            }
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}
