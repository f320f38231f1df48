//! Integer representations used for sequence terms.
//!
//! Two widths are supported: `i64` with checked arithmetic (fast mode) and
//! [`BigInt`] (exact mode). Everything that computes terms is generic over
//! [`Term`] so both modes share one code path.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

/// Where a back-reference `n - q` lands relative to the current position `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lookup {
    /// A stored position `1 <= i < n`.
    Stored(usize),
    /// A position `<= 0`.
    NonPositive,
    /// A position `>= n` (self- or forward-reference).
    Forward,
}

pub trait Term: Clone + Eq + Ord + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;
    fn try_from_bigint(v: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
    fn checked_add(&self, rhs: &Self) -> Option<Self>;
    fn checked_sub(&self, rhs: &Self) -> Option<Self>;
    fn checked_mul(&self, rhs: &Self) -> Option<Self>;

    /// Classifies the index `n - self` for a lookup made while computing
    /// position `n`.
    fn back_reference(&self, n: usize) -> Lookup;

    /// JSON value: a number when it fits in 64 bits, otherwise a decimal string.
    fn to_json(&self) -> serde_json::Value;
}

impl Term for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }

    fn try_from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn checked_add(&self, rhs: &Self) -> Option<Self> {
        i64::checked_add(*self, *rhs)
    }

    fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        i64::checked_sub(*self, *rhs)
    }

    fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        i64::checked_mul(*self, *rhs)
    }

    #[inline]
    fn back_reference(&self, n: usize) -> Lookup {
        let i = n as i128 - *self as i128;
        if i <= 0 {
            Lookup::NonPositive
        } else if i >= n as i128 {
            Lookup::Forward
        } else {
            Lookup::Stored(i as usize)
        }
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(*self)
    }
}

impl Term for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn try_from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }

    fn to_bigint(&self) -> BigInt {
        self.clone()
    }

    fn checked_add(&self, rhs: &Self) -> Option<Self> {
        Some(self + rhs)
    }

    fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }

    fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }

    fn back_reference(&self, n: usize) -> Lookup {
        if !self.is_positive() {
            return Lookup::Forward;
        }
        match self.to_usize() {
            Some(q) if q < n => Lookup::Stored(n - q),
            _ => Lookup::NonPositive,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self.to_i64() {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::String(self.to_string()),
        }
    }
}

/// Converts a term to `i64` when possible (used by reports and exporters).
pub fn term_as_i64<T: Term>(t: &T) -> Option<i64> {
    t.to_bigint().to_i64()
}

/// Integer width used by the brute-force engine.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntegerMode {
    /// 64-bit checked arithmetic; overflow is an error.
    #[default]
    Fast64,
    /// Arbitrary precision.
    Exact,
}

impl FromStr for IntegerMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fast64" | "fast" | "i64" => Ok(Self::Fast64),
            "exact" | "bigint" => Ok(Self::Exact),
            other => Err(format!("unknown integer mode `{other}` (expected fast64 or exact)")),
        }
    }
}

impl fmt::Display for IntegerMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Fast64 => "fast64",
            Self::Exact => "exact",
        })
    }
}
