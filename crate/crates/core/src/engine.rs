//! Brute-force evaluation of the Q-recurrence
//! `Q(n) = Q(n - Q(n-1)) + Q(n - Q(n-2))`.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::term::{Lookup, Term};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("initial condition must contain at least one term")]
    EmptyInitialCondition,
    #[error("initial condition has {0} term(s); the recurrence needs at least 2")]
    TooFewTerms(usize),
    #[error("max_terms ({max_terms}) is smaller than the initial condition ({ic_len} terms)")]
    MaxBelowInitial { max_terms: usize, ic_len: usize },
    #[error("integer overflow while computing the term at index {index}")]
    Overflow { index: usize },
}

/// Prescribed leading terms, optionally extended by zero at every index `<= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InitialCondition {
    terms: Vec<i64>,
    zero_extended: bool,
}

impl InitialCondition {
    pub fn new(terms: Vec<i64>, zero_extended: bool) -> Result<Self, EngineError> {
        if terms.is_empty() {
            return Err(EngineError::EmptyInitialCondition);
        }
        Ok(Self {
            terms,
            zero_extended,
        })
    }

    /// `<1, 2, ..., n>`.
    pub fn identity(n: usize) -> Self {
        Self {
            terms: (1..=n as i64).collect(),
            zero_extended: false,
        }
    }

    /// `<0; 1, 2, ..., n>`.
    pub fn zero_extended_identity(n: usize) -> Self {
        Self {
            terms: (1..=n as i64).collect(),
            zero_extended: true,
        }
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn zero_extended(&self) -> bool {
        self.zero_extended
    }
}

/// Angle-bracket notation, e.g. `<0; 3, 6, 5>`.
impl fmt::Display for InitialCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        if self.zero_extended {
            f.write_str("0; ")?;
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str(">")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "lowercase")]
pub enum SequenceStatus {
    /// Reached the requested length without terminating.
    Alive,
    /// Plain convention: a lookup hit an undefined index at this position.
    Died { at_index: usize },
    /// Zero-extended convention: a term would depend on itself (or later) here.
    Ended { at_index: usize },
}

impl SequenceStatus {
    pub fn terminal_index(&self) -> Option<usize> {
        match *self {
            Self::Alive => None,
            Self::Died { at_index } | Self::Ended { at_index } => Some(at_index),
        }
    }
}

impl fmt::Display for SequenceStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Alive => f.write_str("alive"),
            Self::Died { at_index } => write!(f, "died at {at_index}"),
            Self::Ended { at_index } => write!(f, "ended at {at_index}"),
        }
    }
}

/// Terms `1..=len` of a sequence together with how generation stopped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedSequence<T = i64> {
    ic: InitialCondition,
    terms: Vec<T>,
    status: SequenceStatus,
}

impl<T: Term> GeneratedSequence<T> {
    pub(crate) fn from_parts(ic: InitialCondition, terms: Vec<T>, status: SequenceStatus) -> Self {
        Self { ic, terms, status }
    }

    pub fn initial_condition(&self) -> &InitialCondition {
        &self.ic
    }

    /// All terms; `terms()[i - 1]` is the term at index `i`.
    pub fn terms(&self) -> &[T] {
        &self.terms
    }

    pub fn status(&self) -> SequenceStatus {
        self.status
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// 1-indexed access.
    pub fn term(&self, index: usize) -> Option<&T> {
        index.checked_sub(1).and_then(|i| self.terms.get(i))
    }

    pub fn into_terms(self) -> Vec<T> {
        self.terms
    }

    pub fn to_exact(&self) -> GeneratedSequence<BigInt> {
        GeneratedSequence {
            ic: self.ic.clone(),
            terms: self.terms.iter().map(Term::to_bigint).collect(),
            status: self.status,
        }
    }
}

/// Runs the recurrence from `ic` until `max_terms` terms exist or the
/// sequence terminates.
///
/// A reference to index `i` made while computing position `n` resolves as:
/// a stored term when `1 <= i < n`; zero when `i <= 0` under the
/// zero-extended convention; death when `i <= 0` otherwise; and termination
/// (ended or died, by convention) when `i >= n`.
pub fn evaluate<T: Term>(
    ic: &InitialCondition,
    max_terms: usize,
) -> Result<GeneratedSequence<T>, EngineError> {
    let k = ic.len();
    if k < 2 {
        return Err(EngineError::TooFewTerms(k));
    }
    if max_terms < k {
        return Err(EngineError::MaxBelowInitial {
            max_terms,
            ic_len: k,
        });
    }
    let zero = T::from_i64(0);
    let mut terms: Vec<T> = Vec::with_capacity(max_terms);
    terms.extend(ic.terms().iter().map(|&v| T::from_i64(v)));

    let terminate = |n: usize| {
        if ic.zero_extended() {
            SequenceStatus::Ended { at_index: n }
        } else {
            SequenceStatus::Died { at_index: n }
        }
    };

    for n in k + 1..=max_terms {
        let mut parts = [&zero, &zero];
        for (slot, back) in parts.iter_mut().zip([1usize, 2]) {
            match terms[n - 1 - back].back_reference(n) {
                Lookup::Stored(i) => *slot = &terms[i - 1],
                Lookup::NonPositive if ic.zero_extended() => {}
                Lookup::NonPositive => {
                    return Ok(GeneratedSequence::from_parts(
                        ic.clone(),
                        terms,
                        SequenceStatus::Died { at_index: n },
                    ))
                }
                Lookup::Forward => {
                    return Ok(GeneratedSequence::from_parts(ic.clone(), terms, terminate(n)))
                }
            }
        }
        let next = parts[0]
            .checked_add(parts[1])
            .ok_or(EngineError::Overflow { index: n })?;
        terms.push(next);
    }
    Ok(GeneratedSequence::from_parts(
        ic.clone(),
        terms,
        SequenceStatus::Alive,
    ))
}
