//! Serde helpers for exact integers.
//!
//! Integers are written as decimal strings so that no JSON consumer ever
//! rounds them through a double. Readers accept either strings or plain JSON
//! numbers.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// `BigUint` with decimal-string JSON form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exact(pub BigUint);

/// `BigInt` with decimal-string JSON form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSigned(pub BigInt);

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_str_radix(10))
    }
}

impl Serialize for ExactSigned {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_str_radix(10))
    }
}

struct DecimalVisitor<T>(std::marker::PhantomData<T>);

impl<T> Visitor<'_> for DecimalVisitor<T>
where
    T: FromStr + From<u64>,
{
    type Value = T;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer or a decimal integer string")
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<T, E> {
        Ok(T::from(v))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<T, E> {
        self.visit_str(&v.to_string())
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<T, E> {
        v.parse()
            .map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(DecimalVisitor::<BigUint>(Default::default()))
            .map(Exact)
    }
}

impl<'de> Deserialize<'de> for ExactSigned {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(DecimalVisitor::<BigInt>(Default::default()))
            .map(ExactSigned)
    }
}

pub mod list {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| Exact(x.clone())))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Ok(Vec::<Exact>::deserialize(d)?
            .into_iter()
            .map(|e| e.0)
            .collect())
    }
}

pub mod signed_list {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| ExactSigned(x.clone())))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Ok(Vec::<ExactSigned>::deserialize(d)?
            .into_iter()
            .map(|e| e.0)
            .collect())
    }
}

pub mod nested {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<BigUint>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(
            v.iter()
                .map(|row| row.iter().map(|x| Exact(x.clone())).collect::<Vec<_>>()),
        )
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigUint>>, D::Error> {
        Ok(Vec::<Vec<Exact>>::deserialize(d)?
            .into_iter()
            .map(|row| row.into_iter().map(|e| e.0).collect())
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_numbers_and_strings() {
        let v: Vec<Exact> =
            serde_json::from_str(r#"[1, "2", "123456789012345678901234567890"]"#).unwrap();
        assert_eq!(v[0].0, 1u32.into());
        assert_eq!(v[1].0, 2u32.into());
        assert_eq!(v[2].0.to_string(), "123456789012345678901234567890");
        let s: ExactSigned = serde_json::from_str("-7").unwrap();
        assert_eq!(s.0, BigInt::from(-7));
        assert!(serde_json::from_str::<Exact>(r#""-3""#).is_err());
    }

    #[test]
    fn writes_strings() {
        let json = serde_json::to_string(&Exact(BigUint::from(42u32))).unwrap();
        assert_eq!(json, r#""42""#);
    }
}
