//! The parameter sequences attached to `N`:
//!
//! ```text
//! A_0 = N - 2,  A_1 = 2N + 4,  B_1 = -11N - 22,  C_1 = (N - 1) mod 5
//! A_{i+1} = A_i * (A_i - A_{i-1} + 2) / 5 + B_i
//! B_{i+1} = A_{i+1} - A_i
//! C_i     = (A_i + 2i + 1) mod 5                       (i >= 2)
//! C'_i    = max(0, ((3 - C_i) mod 5) - 1)
//! ```
//!
//! `j` is the first index with `C_j != 1`; `C_j` is the classification of `N`.
//! All arithmetic is exact and every `mod` is Euclidean.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfileError {
    #[error("max_depth must be at least 1")]
    ZeroDepth,
    #[error("A_{step} is not an integer: A_{prev} - A_{prev2} + 2 = {numerator} is not divisible by 5", prev = step - 1, prev2 = step - 2)]
    NotDivisible { step: usize, numerator: BigInt },
    #[error("j(N) is not resolved within depth {depth}")]
    Unresolved { depth: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "state", rename_all = "lowercase")]
pub enum JIndex {
    Resolved { j: usize },
    /// `C_i = 1` for every computed `i <= depth`.
    Unresolved { depth: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureProfile {
    #[serde(serialize_with = "crate::ser::bigint_str")]
    pub n: BigInt,
    /// `A_0, A_1, ...`
    #[serde(serialize_with = "crate::ser::bigint_vec_str")]
    pub a: Vec<BigInt>,
    /// `B_1, B_2, ...`
    #[serde(serialize_with = "crate::ser::bigint_vec_str")]
    pub b: Vec<BigInt>,
    /// `C_1, C_2, ...`
    pub c: Vec<u8>,
    /// `C'_1, C'_2, ...`
    pub c_prime: Vec<u8>,
    pub j: JIndex,
    pub classification: Option<u8>,
}

impl StructureProfile {
    /// `A_i`.
    pub fn a(&self, i: usize) -> &BigInt {
        &self.a[i]
    }

    /// `B_i`, `i >= 1`.
    pub fn b(&self, i: usize) -> &BigInt {
        &self.b[i - 1]
    }

    /// `C_i`, `i >= 1`.
    pub fn c(&self, i: usize) -> u8 {
        self.c[i - 1]
    }

    /// `C'_i`, `i >= 1`.
    pub fn c_prime(&self, i: usize) -> u8 {
        self.c_prime[i - 1]
    }

    pub fn j(&self) -> Option<usize> {
        match self.j {
            JIndex::Resolved { j } => Some(j),
            JIndex::Unresolved { .. } => None,
        }
    }

    /// Deepest `i` for which `A_i` is known.
    pub fn depth(&self) -> usize {
        self.a.len() - 1
    }
}

fn mod5(x: &BigInt) -> u8 {
    x.mod_floor(&BigInt::from(5)).to_u8().expect("residue in 0..5")
}

pub fn c_prime_of(c: u8) -> u8 {
    // (3 - c) mod 5 with c in 0..5
    ((8 - c) % 5).saturating_sub(1)
}

/// Computes the profile of `n` up to `j` or `max_depth`, whichever is first.
pub fn abc_profile(n: impl Into<BigInt>, max_depth: usize) -> Result<StructureProfile, ProfileError> {
    profile_bounded(n.into(), max_depth, None)
}

/// As [`abc_profile`], additionally stopping once the newest `A_i` exceeds
/// `stop_above`. Used by the predictor, which never needs chunk boundaries
/// past the requested length.
pub(crate) fn profile_bounded(
    n: BigInt,
    max_depth: usize,
    stop_above: Option<&BigInt>,
) -> Result<StructureProfile, ProfileError> {
    if max_depth == 0 {
        return Err(ProfileError::ZeroDepth);
    }
    let five = BigInt::from(5);
    let a0 = &n - 2;
    let a1 = &n * 2 + 4;
    let b1 = BigInt::from(-22) - &n * 11;
    let c1 = mod5(&(&n - 1));
    let mut p = StructureProfile {
        n,
        a: vec![a0, a1],
        b: vec![b1],
        c: vec![c1],
        c_prime: vec![c_prime_of(c1)],
        j: JIndex::Unresolved { depth: 1 },
        classification: None,
    };
    let mut i = 1;
    loop {
        if p.c(i) != 1 {
            p.j = JIndex::Resolved { j: i };
            p.classification = Some(p.c(i));
            return Ok(p);
        }
        p.j = JIndex::Unresolved { depth: i };
        if i >= max_depth || stop_above.is_some_and(|cap| p.a(i) > cap) {
            return Ok(p);
        }
        let numerator: BigInt = p.a(i) - p.a(i - 1) + 2;
        let (q, r) = numerator.div_mod_floor(&five);
        if !r.is_zero() {
            return Err(ProfileError::NotDivisible {
                step: i + 1,
                numerator,
            });
        }
        let next: BigInt = p.a(i) * q + p.b(i);
        let b_next: BigInt = &next - p.a(i);
        let c_next = mod5(&(&next + 2 * (i as i64 + 1) + 1));
        p.a.push(next);
        p.b.push(b_next);
        p.c.push(c_next);
        p.c_prime.push(c_prime_of(c_next));
        i += 1;
    }
}

/// Checks `A_i(M) = A_i(N) (mod 5^(j-i+1))` and `C_i(M) = C_i(N)` for
/// `1 <= i <= j`, and `j(M) = j(N)`, where `M = N + multiplier * 5^j(N)`.
pub fn congruence_check(n: impl Into<BigInt>, multiplier: u64) -> Result<bool, ProfileError> {
    const DEPTH: usize = 64;
    let n = n.into();
    let base = abc_profile(n.clone(), DEPTH)?;
    let j = base.j().ok_or(ProfileError::Unresolved { depth: DEPTH })?;
    let step = num_traits::pow(BigInt::from(5), j);
    let m = &n + BigInt::from(multiplier) * &step;
    let shifted = match abc_profile(m, j) {
        Ok(p) => p,
        Err(ProfileError::NotDivisible { .. }) => return Ok(false),
        Err(e) => return Err(e),
    };
    if shifted.j() != Some(j) {
        return Ok(false);
    }
    let five = BigInt::from(5);
    let ok = (1..=j).all(|i| {
        let modulus = num_traits::pow(five.clone(), j - i + 1);
        let diff = shifted.a(i) - base.a(i);
        diff.mod_floor(&modulus).is_zero() && shifted.c(i) == base.c(i)
    });
    Ok(ok)
}

pub(crate) fn as_index(x: &BigInt) -> Option<usize> {
    if x.is_negative() {
        None
    } else {
        x.to_usize()
    }
}
