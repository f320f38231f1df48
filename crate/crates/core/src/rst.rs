//! The nested R/S/T system and the interleaving patterns it produces inside
//! Q-recurrence solutions.
//!
//! ```text
//! R(n) = R(n - R(n-1)) + S(n-1)          n >= 3,  R(1) = 1, R(2) = 2
//! S(n) = S(n - R(n)) + S(n - R(n-1))     n >= 2,  S(0) = 1, S(1) = 1
//! T(n) = T(n - R(n)) + T(n - S(n))       n >= 1,  T(0) = 1
//! ```
//!
//! R is zero at indices `<= 0`; S and T are zero at negative indices.

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::engine::{evaluate, EngineError, InitialCondition, SequenceStatus};
use crate::term::{Lookup, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RstError {
    #[error("n_max must be at least 2 (got {0})")]
    TooShort(usize),
    #[error("integer overflow computing {which:?}({index})")]
    Overflow { which: Which, index: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("k_max must be at least 1")]
    EmptyRange,
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Rst(#[from] RstError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Which {
    R,
    S,
    T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "state", rename_all = "lowercase")]
pub enum RstStatus {
    Alive,
    Ended { which: Which, at_index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RstState<T = i64> {
    /// `r[i - 1] = R(i)`.
    r: Vec<T>,
    /// `s[i] = S(i)`.
    s: Vec<T>,
    /// `t[i] = T(i)`.
    t: Vec<T>,
    status: RstStatus,
}

impl<T: Term> RstState<T> {
    /// `R(n)`; zero for `n <= 0`, `None` past the computed range.
    pub fn r(&self, n: i64) -> Option<T> {
        if n <= 0 {
            Some(T::from_i64(0))
        } else {
            self.r.get(n as usize - 1).cloned()
        }
    }

    pub fn s(&self, n: i64) -> Option<T> {
        if n < 0 {
            Some(T::from_i64(0))
        } else {
            self.s.get(n as usize).cloned()
        }
    }

    pub fn t(&self, n: i64) -> Option<T> {
        if n < 0 {
            Some(T::from_i64(0))
        } else {
            self.t.get(n as usize).cloned()
        }
    }

    pub fn r_values(&self) -> &[T] {
        &self.r
    }

    pub fn s_values(&self) -> &[T] {
        &self.s
    }

    pub fn t_values(&self) -> &[T] {
        &self.t
    }

    pub fn status(&self) -> RstStatus {
        self.status
    }

    /// Largest `n` for which R(n), S(n) and T(n) are all known.
    pub fn complete_through(&self) -> usize {
        self.r.len().min(self.s.len() - 1).min(self.t.len() - 1)
    }
}

enum Fetch<'a, T> {
    Value(Option<&'a T>),
    Ended,
}

/// Lookup into a sequence stored from index 1 (zero at `<= 0`).
fn from_one<'a, T: Term>(store: &'a [T], q: &T, n: usize) -> Fetch<'a, T> {
    match q.back_reference(n) {
        Lookup::Stored(i) => Fetch::Value(Some(&store[i - 1])),
        Lookup::NonPositive => Fetch::Value(None),
        Lookup::Forward => Fetch::Ended,
    }
}

/// Lookup into a sequence stored from index 0 (zero at `< 0`).
fn from_zero<'a, T: Term>(store: &'a [T], q: &T, n: usize) -> Fetch<'a, T> {
    // n - q relative to n + 1 shifts the stored range to 1..=n
    match q.back_reference(n + 1) {
        Lookup::Stored(i) => Fetch::Value(Some(&store[i - 1])),
        Lookup::NonPositive => Fetch::Value(None),
        Lookup::Forward => Fetch::Ended,
    }
}

fn sum<T: Term>(a: Option<&T>, b: Option<&T>, which: Which, index: usize) -> Result<T, RstError> {
    let zero = T::from_i64(0);
    a.unwrap_or(&zero)
        .checked_add(b.unwrap_or(&zero))
        .ok_or(RstError::Overflow { which, index })
}

/// Computes R(1..=n_max), S(0..=n_max), T(0..=n_max), stopping early if a
/// lookup lands at or beyond the position being computed.
pub fn rst_compute<T: Term>(n_max: usize) -> Result<RstState<T>, RstError> {
    if n_max < 2 {
        return Err(RstError::TooShort(n_max));
    }
    let one = T::from_i64(1);
    let mut st = RstState {
        r: Vec::with_capacity(n_max),
        s: Vec::with_capacity(n_max + 1),
        t: Vec::with_capacity(n_max + 1),
        status: RstStatus::Alive,
    };
    st.s.push(one.clone());
    st.t.push(one.clone());

    macro_rules! fetch {
        ($f:expr, $which:expr, $n:expr) => {
            match $f {
                Fetch::Value(v) => v,
                Fetch::Ended => {
                    st.status = RstStatus::Ended {
                        which: $which,
                        at_index: $n,
                    };
                    return Ok(st);
                }
            }
        };
    }

    for n in 1..=n_max {
        // R(n)
        let r_n = match n {
            1 => one.clone(),
            2 => T::from_i64(2),
            _ => {
                let a = fetch!(from_one(&st.r, &st.r[n - 2], n), Which::R, n);
                sum(a, Some(&st.s[n - 1]), Which::R, n)?
            }
        };
        st.r.push(r_n);

        // S(n)
        let s_n = if n == 1 {
            one.clone()
        } else {
            let a = fetch!(from_zero(&st.s, &st.r[n - 1], n), Which::S, n);
            let b = fetch!(from_zero(&st.s, &st.r[n - 2], n), Which::S, n);
            sum(a, b, Which::S, n)?
        };
        st.s.push(s_n);

        // T(n)
        let a = fetch!(from_zero(&st.t, &st.r[n - 1], n), Which::T, n);
        let b = fetch!(from_zero(&st.t, &st.s[n], n), Which::T, n);
        let t_n = sum(a, b, Which::T, n)?;
        st.t.push(t_n);
    }
    Ok(st)
}

/// Whether pattern hypotheses are enforced or only probed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Hypotheses {
    #[default]
    Enforce,
    Relax,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub index: usize,
    pub expected: i64,
    /// `None` when the sequence had already terminated.
    pub actual: Option<i64>,
}

/// Result of checking the `(5R(k), 5S(k), lambda T(k), 4, 5R(k))` interleaving.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternReport {
    /// Every row `1..=holds_through_k` matched.
    pub holds_through_k: usize,
    pub k_max: usize,
    pub first_violation: Option<Violation>,
    /// First `k` with `lambda * T(k) < K + 5k + 4`.
    pub side_condition_fails_at: Option<usize>,
    pub sequence_status: SequenceStatus,
    pub rst_status: RstStatus,
}

impl PatternReport {
    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Brute-forces `<0; prefix, 5, lambda, 4, mu>` and compares indices
/// `K + 5k + r` against `(5R(k), 5S(k), lambda T(k), 4, 5R(k))` for
/// `k = 1..=k_max`, where `K = prefix.len()`.
pub fn qt_pattern_check(
    prefix: &[i64],
    lambda: i64,
    mu: i64,
    k_max: usize,
    hypotheses: Hypotheses,
) -> Result<PatternReport, PatternError> {
    let k0 = prefix.len();
    if k_max == 0 {
        return Err(PatternError::EmptyRange);
    }
    if hypotheses == Hypotheses::Enforce {
        if lambda < 9 {
            return Err(PatternError::Hypothesis(format!(
                "lambda must be >= 9 (got {lambda})"
            )));
        }
        if mu < k0 as i64 + 6 {
            return Err(PatternError::Hypothesis(format!(
                "mu must be >= K + 6 = {} (got {mu})",
                k0 + 6
            )));
        }
    }
    let mut ic = prefix.to_vec();
    ic.extend([5, lambda, 4, mu]);
    let ic = InitialCondition::new(ic, true)?;
    let seq = evaluate::<i64>(&ic, k0 + 5 * k_max + 4)?;
    let rst = rst_compute::<i64>(k_max.max(2))?;

    let overflow = |i| PatternError::Rst(RstError::Overflow { which: Which::T, index: i });
    let mut report = PatternReport {
        holds_through_k: 0,
        k_max,
        first_violation: None,
        side_condition_fails_at: None,
        sequence_status: seq.status(),
        rst_status: rst.status(),
    };
    for k in 1..=k_max {
        let (Some(r), Some(s), Some(t)) = (rst.r(k as i64), rst.s(k as i64), rst.t(k as i64))
        else {
            break;
        };
        let lt = lambda.checked_mul(t).ok_or_else(|| overflow(k))?;
        if report.side_condition_fails_at.is_none() && lt < (k0 + 5 * k + 4) as i64 {
            report.side_condition_fails_at = Some(k);
        }
        let row = [5 * r, 5 * s, lt, 4, 5 * r];
        for (j, expected) in row.into_iter().enumerate() {
            let index = k0 + 5 * k + j;
            let actual = seq.term(index).copied();
            if actual != Some(expected) {
                report.first_violation = Some(Violation {
                    index,
                    expected,
                    actual,
                });
                return Ok(report);
            }
        }
        report.holds_through_k = k;
    }
    Ok(report)
}

/// `max(0, ((K + 4 - lambda) mod 5) - 1)` with a nonnegative remainder.
pub fn cycle_overhang(k0: usize, lambda: i64) -> i64 {
    ((k0 as i64 + 4 - lambda).mod_floor(&5) - 1).max(0)
}

/// Result of checking the `(5, lambda k + mu, 5, lambda, 3)` chunk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChunkReport {
    pub nu: i64,
    /// `lambda + nu`: the last index the pattern is guaranteed to reach.
    pub guaranteed_through: usize,
    /// Last index of the unbroken run starting at `K + 1`.
    pub holds_through_index: usize,
    /// First index where the sequence leaves the pattern (within the horizon).
    pub first_divergence: Option<Violation>,
    pub sequence_status: SequenceStatus,
}

impl ChunkReport {
    pub fn holds(&self) -> bool {
        self.holds_through_index >= self.guaranteed_through
    }
}

/// Brute-forces `<0; prefix, mu, 5, lambda, 3>` and checks the period-5 chunk
/// `(5, lambda k + mu, 5, lambda, 3)` at indices `K + 5k + r` from `K + 1`
/// through `lambda + nu`, continuing past that point (to at least
/// `K + 5 k_max + 4`) to locate the first divergence.
pub fn qc_pattern_check(
    prefix: &[i64],
    mu: i64,
    lambda: i64,
    k_max: usize,
    hypotheses: Hypotheses,
) -> Result<ChunkReport, PatternError> {
    let k0 = prefix.len();
    if hypotheses == Hypotheses::Enforce {
        if lambda <= k0 as i64 + 5 {
            return Err(PatternError::Hypothesis(format!(
                "lambda must exceed K + 5 = {} (got {lambda})",
                k0 + 5
            )));
        }
        if lambda + mu <= k0 as i64 + 6 {
            return Err(PatternError::Hypothesis(format!(
                "lambda + mu must exceed K + 6 = {} (got {})",
                k0 + 6,
                lambda + mu
            )));
        }
    }
    let nu = cycle_overhang(k0, lambda);
    let guaranteed_through = (lambda + nu).max(0) as usize;
    let horizon = (k0 + 5 * k_max + 4).max(guaranteed_through + 5);

    let mut ic = prefix.to_vec();
    ic.extend([mu, 5, lambda, 3]);
    let seq = evaluate::<i64>(&InitialCondition::new(ic, true)?, horizon)?;

    let expected_at = |n: usize| -> Option<i64> {
        let (k, r) = (n - k0).div_rem(&5);
        match r {
            0 | 2 => Some(5),
            1 => lambda.checked_mul(k as i64)?.checked_add(mu),
            3 => Some(lambda),
            _ => Some(3),
        }
    };
    let mut report = ChunkReport {
        nu,
        guaranteed_through,
        holds_through_index: k0,
        first_divergence: None,
        sequence_status: seq.status(),
    };
    for n in k0 + 1..=horizon {
        let expected = expected_at(n).ok_or(PatternError::Engine(EngineError::Overflow { index: n }))?;
        let actual = seq.term(n).copied();
        if actual != Some(expected) {
            report.first_divergence = Some(Violation {
                index: n,
                expected,
                actual,
            });
            break;
        }
        report.holds_through_index = n;
    }
    Ok(report)
}
