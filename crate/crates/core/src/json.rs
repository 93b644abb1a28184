//! Serde adapters for big integers and rationals.
//!
//! Integers within ±(2^53 − 1) are written as JSON numbers so every consumer
//! reads them exactly; anything larger is written as a decimal string.
//! Both forms are accepted on input.

use std::fmt;

use num_traits::{Signed, ToPrimitive};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact::{Int, Rat};

const SAFE: i64 = (1 << 53) - 1;

/// Wrapper that carries the number-or-string encoding through containers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JsonInt(pub Int);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) if v.abs() <= SAFE => s.serialize_i64(v),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(IntVisitor).map(JsonInt)
    }
}

struct IntVisitor;

impl Visitor<'_> for IntVisitor {
    type Value = Int;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal integer string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
        Ok(v.into())
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
        Ok(v.into())
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
        parse_int(v).map_err(E::custom)
    }
}

/// Strict decimal parser: optional sign, then digits only.
pub fn parse_int(s: &str) -> Result<Int, String> {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("not a decimal integer: {s:?}"));
    }
    s.parse::<Int>().map_err(|e| format!("{s:?}: {e}"))
}

pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Int, s: S) -> Result<S::Ok, S::Error> {
        JsonInt(v.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        JsonInt::deserialize(d).map(|j| j.0)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|x| JsonInt(x.clone())))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
            let v: Vec<JsonInt> = Vec::deserialize(d)?;
            Ok(v.into_iter().map(|j| j.0).collect())
        }
    }

    pub mod pairs {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[(Int, Int)], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|(a, b)| (JsonInt(a.clone()), JsonInt(b.clone()))))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(Int, Int)>, D::Error> {
            let v: Vec<(JsonInt, JsonInt)> = Vec::deserialize(d)?;
            Ok(v.into_iter().map(|(a, b)| (a.0, b.0)).collect())
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<Int>, s: S) -> Result<S::Ok, S::Error> {
            v.as_ref().map(|x| JsonInt(x.clone())).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Int>, D::Error> {
            Ok(Option::<JsonInt>::deserialize(d)?.map(|j| j.0))
        }
    }
}

/// Rationals as `"p/q"` strings (or `"p"` when integral).
pub mod rat {
    use super::*;
    use num_traits::Zero;

    pub fn serialize<S: Serializer>(v: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        let (n, q) = match s.split_once('/') {
            Some((n, q)) => (n, q),
            None => (s.as_str(), "1"),
        };
        let n = parse_int(n).map_err(de::Error::custom)?;
        let q = parse_int(q).map_err(de::Error::custom)?;
        if q.is_zero() || q.is_negative() {
            return Err(de::Error::custom("denominator must be positive"));
        }
        Ok(Rat::new(n, q))
    }
}

pub mod rat_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "super::rat")] Rat);
        let v: Vec<W> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|w| w.0).collect())
    }
}
