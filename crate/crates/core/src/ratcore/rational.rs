//! Arbitrary-precision rationals.
//!
//! `num_rational::BigRational` already keeps values in lowest terms with a
//! positive denominator, so it is used directly. This module adds the
//! canonical string form (`"p/q"`, or `"p"` when `q = 1`) and a few helpers
//! the rest of the crate leans on.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::ParseRational(s.to_string()));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| Error::ParseRational(s.to_string()))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| Error::ParseRational(s.to_string()))?;
        if d.is_zero() {
            return Err(Error::ParseRational(s.to_string()));
        }
        Ok(Rational::new(n, d))
    } else {
        let n = BigInt::from_str(t).map_err(|_| Error::ParseRational(s.to_string()))?;
        Ok(Rational::from_integer(n))
    }
}

/// Parses a comma-separated list such as `1/2,1/3`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

/// Canonical form: `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Nearest double, saturating to +-inf on overflow.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`.
pub fn pochhammer(a: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut t = a.clone();
    for _ in 0..k {
        acc *= &t;
        t += Rational::one();
    }
    acc
}

/// Generalized binomial coefficient `C(a, k)` for rational `a`.
pub fn binomial(a: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut t = a.clone();
    for i in 1..=k {
        acc *= &t;
        acc /= int(i as i64);
        t -= Rational::one();
    }
    acc
}

pub fn factorial(k: usize) -> Rational {
    (1..=k).fold(Rational::one(), |acc, i| acc * int(i as i64))
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Serde adapter for a single rational stored as its canonical string.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>` stored as a list of canonical strings.
pub mod serde_rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&format_rational(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
