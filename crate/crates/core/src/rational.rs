//! Exact rational scalars and their text form.
//!
//! Rationals are written as `p/q` or as a bare integer `p`. Decimal notation
//! is rejected on purpose: a decimal such as `0.1` silently suggests a binary
//! float, and the callers of this crate need the exact value.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `p/q` as an exact rational. Panics if `q == 0`.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn from_bigint(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

/// Largest integer not exceeding `r`.
pub fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn sign(r: &Rational) -> Ordering {
    r.numer().cmp(&BigInt::zero())
}

pub fn pow(r: &Rational, e: usize) -> Rational {
    num_traits::pow(r.clone(), e)
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if s.contains(['.', 'e', 'E']) {
        return Err(Error::Parse(format!(
            "`{s}` looks like a decimal; write exact values as p/q (e.g. 3/2)"
        )));
    }
    let parse_int = |t: &str| -> Result<BigInt> {
        let t = t.trim();
        let t = t.strip_prefix('+').unwrap_or(t);
        t.parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("`{text}` is not an integer or p/q fraction")))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("`{text}` has a zero denominator")));
            }
            Ok(Rational::new(parse_int(p)?, q))
        }
    }
}

/// Parses a comma-separated list of rationals, reporting the 1-based
/// position of the first malformed entry.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .enumerate()
        .map(|(i, item)| {
            parse_rational(item).map_err(|e| match e {
                Error::Parse(msg) => Error::Parse(format!("entry {}: {msg}", i + 1)),
                other => other,
            })
        })
        .collect()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// Serde adapters that write rationals as canonical strings.
pub mod serde_rational {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(de::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(
            v: &[Rational],
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<Rational>, D::Error> {
            let texts = Vec::<String>::deserialize(d)?;
            texts
                .iter()
                .map(|t| parse_rational(t).map_err(de::Error::custom))
                .collect()
        }
    }

    pub mod opt_vec {
        use super::*;

        pub fn serialize<S: Serializer>(
            v: &Option<Vec<Rational>>,
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            match v {
                Some(v) => vec::serialize(v, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Option<Vec<Rational>>, D::Error> {
            let texts = Option::<Vec<String>>::deserialize(d)?;
            texts
                .map(|ts| {
                    ts.iter()
                        .map(|t| parse_rational(t).map_err(de::Error::custom))
                        .collect()
                })
                .transpose()
        }
    }
}
