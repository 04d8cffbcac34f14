//! Exact rationals with floor-based integer and fractional parts.
//!
//! All quantities in this crate are exact. `Rational` is an arbitrary
//! precision reduced fraction, so there is no wraparound anywhere; the few
//! places that convert a count back to a machine integer panic on overflow.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational as Rational;

/// The rational `num/den`. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `([q], {q})` with `[q]` the greatest integer not above `q`.
///
/// The fractional part always lies in `[0, 1)`, also for negative `q`.
pub fn floor_frac(q: &Rational) -> (BigInt, Rational) {
    let fl = q.numer().div_floor(q.denom());
    let frac = q - Rational::from_integer(fl.clone());
    (fl, frac)
}

pub fn floor(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub fn frac(q: &Rational) -> Rational {
    floor_frac(q).1
}

/// `[q]` as an `i64`. Panics if it does not fit.
pub fn floor_i64(q: &Rational) -> i64 {
    floor(q).to_i64().expect("integer part overflows i64")
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// Generalized falling factorial `c (c-1) ... (c-m)`.
///
/// `m = -1` is the empty product. For a positive integer `c` with `m = c - 1`
/// this is the ordinary factorial; for non-integer `c` and `m = [c]` it is
/// `c (c-1) ... (c-[c])`.
pub fn gen_factorial(c: &Rational, m: i64) -> Rational {
    assert!(m >= -1, "gen_factorial needs m >= -1, got {m}");
    let mut acc = Rational::one();
    for k in 0..=m {
        acc *= c - int(k);
    }
    acc
}

pub fn pow(q: &Rational, e: u32) -> Rational {
    num_traits::pow(q.clone(), e as usize)
}

/// Parses `p`, `p/q`, with an optional leading `+`, `-` or `U+2212`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let (neg, body) = if let Some(rest) = t.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = t.strip_prefix('\u{2212}') {
        (true, rest)
    } else if let Some(rest) = t.strip_prefix('+') {
        (false, rest)
    } else {
        (false, t)
    };
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let digits = |x: &str| -> Result<BigInt> {
        if x.is_empty() || !x.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        x.parse::<BigInt>().map_err(|_| bad())
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (digits(n)?, digits(d)?),
        None => (digits(body)?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    let q = Rational::new(num, den);
    Ok(if neg { -q } else { q })
}

/// Canonical `p/q` text (denominator omitted when it is 1).
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn is_positive(q: &Rational) -> bool {
    q.is_positive()
}

/// Serde adapter writing a rational as its `p/q` string.
pub mod serde_rational {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let v = RationalRepr::deserialize(d)?;
        v.into_rational().map_err(serde::de::Error::custom)
    }

    /// Accepts either a JSON string or a JSON integer.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RationalRepr {
        Int(i64),
        Str(String),
    }

    impl RationalRepr {
        pub(crate) fn into_rational(self) -> crate::error::Result<Rational> {
            match self {
                RationalRepr::Int(n) => Ok(super::int(n)),
                RationalRepr::Str(s) => parse_rational(&s),
            }
        }
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod serde_rational_vec {
    use super::serde_rational::RationalRepr;
    use super::{format_rational, Rational};
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&format_rational(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<RationalRepr>::deserialize(d)?;
        raw.into_iter()
            .map(|r| r.into_rational().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter for `Vec<Vec<Rational>>`.
pub mod serde_rational_mat {
    use super::serde_rational::RationalRepr;
    use super::{format_rational, Rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let raw = Vec::<Vec<RationalRepr>>::deserialize(d)?;
        raw.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|r| r.into_rational().map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

/// Serde adapter for `Option<Vec<Rational>>`; use with `#[serde(default)]`.
pub mod serde_rational_vec_opt {
    use super::Rational;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => super::serde_rational_vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        super::serde_rational_vec::deserialize(d).map(Some)
    }
}
