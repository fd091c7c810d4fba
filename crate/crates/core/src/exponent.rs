//! Lebesgue exponents in `[1, ∞]`.
//!
//! Infinity is a distinguished variant rather than `f64::INFINITY`, so the
//! limit conventions used by the constants (`1' = ∞`, `∞' = 1`, `∞^0 = 1`)
//! are handled by matching instead of by floating overflow.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Tolerance applied to reciprocals when comparing exponents.
pub const RECIPROCAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub const ONE: Exponent = Exponent::Finite(1.0);
    pub const TWO: Exponent = Exponent::Finite(2.0);
    pub const INFINITY: Exponent = Exponent::Infinity;

    /// Builds an exponent; `f64::INFINITY` maps to [`Exponent::Infinity`].
    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value < 1.0 {
            return Err(Error::InvalidExponent(format!("{value} is not in [1, inf]")));
        }
        if value.is_infinite() {
            Ok(Exponent::Infinity)
        } else {
            Ok(Exponent::Finite(value))
        }
    }

    /// Builds an exponent from its reciprocal `1/p ∈ [0, 1]`.
    pub fn from_recip(recip: f64) -> Result<Self> {
        if !(-RECIPROCAL_TOL..=1.0 + RECIPROCAL_TOL).contains(&recip) {
            return Err(Error::InvalidExponent(format!("reciprocal {recip} is not in [0, 1]")));
        }
        let recip = recip.clamp(0.0, 1.0);
        if recip == 0.0 {
            Ok(Exponent::Infinity)
        } else {
            Ok(Exponent::Finite(1.0 / recip))
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }

    /// The value as a float (`f64::INFINITY` for ∞).
    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }

    /// `1/p`, with `1/∞ = 0`.
    pub fn recip(self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinity => 0.0,
        }
    }

    /// Hölder conjugate `p'` with `1/p + 1/p' = 1`.
    pub fn conj(self) -> Exponent {
        match self {
            Exponent::Infinity => Exponent::ONE,
            Exponent::Finite(1.0) => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
        }
    }

    /// Equality up to [`RECIPROCAL_TOL`] on reciprocals.
    pub fn approx_eq(self, other: Exponent) -> bool {
        (self.recip() - other.recip()).abs() <= RECIPROCAL_TOL
    }

    /// `self ≤ other` up to [`RECIPROCAL_TOL`] on reciprocals.
    pub fn approx_le(self, other: Exponent) -> bool {
        self.recip() + RECIPROCAL_TOL >= other.recip()
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts decimals, fractions such as `4/3`, and `inf`/`infinity`/`∞`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        if lower == "inf" || lower == "infinity" || t == "∞" || lower == "+inf" {
            return Ok(Exponent::Infinity);
        }
        let bad = || Error::InvalidExponent(format!("cannot parse '{s}'"));
        let value = match t.split_once('/') {
            Some((num, den)) => {
                let num: f64 = num.trim().parse().map_err(|_| bad())?;
                let den: f64 = den.trim().parse().map_err(|_| bad())?;
                num / den
            }
            None => t.parse().map_err(|_| bad())?,
        };
        Exponent::new(value)
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(p) => serializer.serialize_f64(*p),
            Exponent::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        let parsed = match Raw::deserialize(deserializer)? {
            Raw::Num(v) => Exponent::new(v),
            Raw::Text(s) => s.parse(),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}
