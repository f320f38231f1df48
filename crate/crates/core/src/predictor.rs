//! Closed-form prediction of `<0; 1, ..., N>` from the profile of `N`, and a
//! term-by-term comparison against the brute-force engine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::engine::{evaluate, EngineError, GeneratedSequence, InitialCondition, SequenceStatus};
use crate::profile::{as_index, profile_bounded, JIndex, ProfileError, StructureProfile};
use crate::rst::{rst_compute, RstError, RstStatus, Which};
use crate::tail::{CLASS0_TAIL, OPENING};
use crate::term::Term;

const MAX_DEPTH: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PredictError {
    #[error("N = {0} is below 35")]
    TooSmall(i64),
    #[error("N = {0} is exceptional; use the engine to observe it")]
    Exceptional(i64),
    #[error("N = {0} has classification 0 but is below 118")]
    ClassZeroTooSmall(i64),
    #[error("max_terms = {max_terms} is shorter than the initial condition ({n} terms)")]
    MaxBelowInitial { max_terms: usize, n: i64 },
    #[error("index {0} does not fit in memory")]
    IndexTooLarge(String),
    #[error("term at index {index} does not fit in 64 bits")]
    Overflow { index: usize },
    #[error("{what} is not divisible by 5")]
    NotDivisible { what: String },
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Rst(#[from] RstError),
}

impl PredictError {
    /// Errors that contradict the integrality guarantees rather than a caller
    /// precondition.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Self::NotDivisible { .. } | Self::Profile(ProfileError::NotDivisible { .. })
        )
    }
}

/// Why a classification-2 prediction stops before `max_terms`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Truncation {
    /// `A_j T(k) < A_j + 5k + 2`.
    SideCondition { k: usize, index: usize },
    /// The R/S/T system ended before the needed value.
    RstEnded { which: Which, at_index: usize },
}

/// Index range of one period-5 chunk, `level` counted from 1. The sporadic
/// terms in front of a chunk are not part of it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChunkSpan {
    pub level: usize,
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug)]
pub struct Prediction<T = i64> {
    pub sequence: GeneratedSequence<T>,
    pub profile: StructureProfile,
    pub chunks: Vec<ChunkSpan>,
    pub truncation: Option<Truncation>,
}

/// Values of `N` whose sequences the predictor does not describe.
pub fn is_exceptional(n: i64) -> bool {
    (2..=34).contains(&n)
        || (n > 1 && n < 118 && n.rem_euclid(5) == 1)
        || matches!(n, 57 | 67 | 82 | 107 | 117)
}

struct Emitter<T> {
    terms: Vec<T>,
    max: usize,
}

impl<T: Term> Emitter<T> {
    fn full(&self) -> bool {
        self.terms.len() >= self.max
    }

    /// Index the next push lands on.
    fn next(&self) -> usize {
        self.terms.len() + 1
    }

    fn push(&mut self, v: &BigInt) -> Result<(), PredictError> {
        let index = self.next();
        let t = T::try_from_bigint(v).ok_or(PredictError::Overflow { index })?;
        self.terms.push(t);
        Ok(())
    }

    fn push_i64(&mut self, v: i64) {
        self.terms.push(T::from_i64(v));
    }
}

fn index_of(x: &BigInt) -> Result<usize, PredictError> {
    as_index(x).ok_or_else(|| PredictError::IndexTooLarge(x.to_string()))
}

/// `A_j * ((A_j - A_{j-1} - shift) / 5)`.
fn scaled_gap(p: &StructureProfile, j: usize, shift: i64) -> Result<BigInt, PredictError> {
    let num: BigInt = p.a(j) - p.a(j - 1) - shift;
    let (q, r) = num.div_mod_floor(&BigInt::from(5));
    if !r.is_zero() {
        return Err(PredictError::NotDivisible {
            what: format!("A_{j} - A_{} - {shift} = {num}", j - 1),
        });
    }
    Ok(p.a(j) * q)
}

/// Emits `idx` in `from..=to` with the value for `(k, r)` where
/// `idx - base = 5k + r`.
fn emit_chunk<T: Term>(
    out: &mut Emitter<T>,
    base: usize,
    to: usize,
    slope: &BigInt,
    intercept: &BigInt,
    line_residue: usize,
    fixed: [Option<&BigInt>; 5],
) -> Result<(), PredictError> {
    while !out.full() && out.next() <= to {
        let off = out.next() - base;
        let (k, r) = (off / 5, off % 5);
        if r == line_residue {
            out.push(&(slope * BigInt::from(k) + intercept))?;
        } else {
            out.push(fixed[r].expect("fixed residue"))?;
        }
    }
    Ok(())
}

fn check_preconditions(n: i64, max_terms: usize) -> Result<(), PredictError> {
    if n < 35 {
        return Err(PredictError::TooSmall(n));
    }
    if is_exceptional(n) {
        return Err(PredictError::Exceptional(n));
    }
    if max_terms < n as usize {
        return Err(PredictError::MaxBelowInitial { max_terms, n });
    }
    Ok(())
}

/// Builds the first `max_terms` terms of `<0; 1, ..., N>` without running the
/// recurrence on the chunks, together with the profile it was built from.
pub fn predict<T: Term>(n: i64, max_terms: usize) -> Result<Prediction<T>, PredictError> {
    check_preconditions(n, max_terms)?;
    let cap = BigInt::from(max_terms);
    let p = profile_bounded(BigInt::from(n), MAX_DEPTH, Some(&cap))?;
    if p.classification == Some(0) && n < 118 {
        return Err(PredictError::ClassZeroTooSmall(n));
    }
    if let JIndex::Unresolved { depth } = p.j {
        if p.a(depth) <= &cap {
            return Err(ProfileError::Unresolved { depth }.into());
        }
    }

    let nn = n as usize;
    let mut out = Emitter {
        terms: Vec::with_capacity(max_terms),
        max: max_terms,
    };
    let mut chunks = Vec::new();
    let mut truncation = None;
    let mut status = SequenceStatus::Alive;

    for i in 1..=n {
        out.push_i64(i);
    }
    for &(a, c) in &OPENING {
        if out.full() {
            break;
        }
        out.push(&(BigInt::from(a) * n + c))?;
    }

    let five = BigInt::from(5);
    let three = BigInt::from(3);
    let eight = BigInt::from(8);

    let end1 = index_of(p.a(1))? + p.c_prime(1) as usize;
    chunks.push(ChunkSpan {
        level: 1,
        start: nn + 35,
        end: end1,
    });
    let a1 = p.a(1).clone();
    emit_chunk(
        &mut out,
        nn,
        end1,
        &a1,
        p.b(1),
        0,
        [None, Some(&five), Some(&a1), Some(&three), Some(&five)],
    )?;

    let j = p.j();
    let last_level = j.unwrap_or(p.depth());
    for m in 1..last_level {
        if out.full() {
            break;
        }
        let am = index_of(p.a(m))?;
        let next = p.a(m + 1).clone();
        for v in [&five, &eight, &next, &three, &eight] {
            if out.full() {
                break;
            }
            out.push(v)?;
        }
        let end = index_of(&next)? + p.c_prime(m + 1) as usize;
        chunks.push(ChunkSpan {
            level: m + 1,
            start: am + 7,
            end,
        });
        emit_chunk(
            &mut out,
            am,
            end,
            &next,
            p.b(m + 1),
            2,
            [Some(&three), Some(&five), None, Some(&five), Some(&next)],
        )?;
    }

    if let (Some(j), false) = (j, out.full()) {
        let aj = p.a(j).clone();
        let base = index_of(&aj)?;
        let bj = p.b(j).clone();
        match p.c(j) {
            0 => {
                let d = scaled_gap(&p, j, 2)?;
                for e in &CLASS0_TAIL {
                    if out.full() {
                        break;
                    }
                    out.push(&e.value(&d, &aj, &bj))?;
                }
                if !out.full() {
                    status = SequenceStatus::Ended {
                        at_index: base + 161,
                    };
                }
            }
            2 => {
                truncation = class2_tail(&mut out, &p, j)?;
            }
            3 => {
                let d: BigInt = scaled_gap(&p, j, 5)? + &bj;
                let vals = [BigInt::from(6), &aj + 5, d, BigInt::zero()];
                for v in &vals {
                    if out.full() {
                        break;
                    }
                    out.push(v)?;
                }
                if !out.full() {
                    status = SequenceStatus::Ended { at_index: base + 5 };
                }
            }
            4 => {
                let d4: BigInt = scaled_gap(&p, j, 6)? + &bj + 7;
                let vals = [
                    BigInt::from(7),
                    &aj + 5,
                    BigInt::from(4),
                    &aj + 2,
                    BigInt::from(13),
                    d4.clone(),
                    BigInt::from(5),
                    BigInt::from(4),
                    &aj + 15,
                    d4,
                    BigInt::zero(),
                ];
                for v in &vals {
                    if out.full() {
                        break;
                    }
                    out.push(v)?;
                }
                if !out.full() {
                    status = SequenceStatus::Ended {
                        at_index: base + 15,
                    };
                }
            }
            c => unreachable!("classification {c}"),
        }
    }

    let ic = InitialCondition::zero_extended_identity(nn);
    Ok(Prediction {
        sequence: GeneratedSequence::from_parts(ic, out.terms, status),
        profile: p,
        chunks,
        truncation,
    })
}

fn class2_tail<T: Term>(
    out: &mut Emitter<T>,
    p: &StructureProfile,
    j: usize,
) -> Result<Option<Truncation>, PredictError> {
    let aj = p.a(j).clone();
    let base = index_of(&aj)?;
    out.push(&BigInt::from(4))?;
    if out.full() {
        return Ok(None);
    }
    out.push(&(scaled_gap(p, j, 4)? + p.b(j) + 2))?;
    let k_max = (out.max.saturating_sub(base)) / 5 + 2;
    let rst = rst_compute::<i64>(k_max)?;
    let ended = |which| match rst.status() {
        RstStatus::Ended { at_index, .. } => Truncation::RstEnded { which, at_index },
        RstStatus::Alive => unreachable!("value missing from a live system"),
    };
    let five = BigInt::from(5);
    while !out.full() {
        let off = out.next() - base;
        let (k, r) = (off / 5, off % 5);
        let ki = k as i64;
        let v = match r {
            0 => {
                let Some(t) = rst.t(ki) else {
                    return Ok(Some(ended(Which::T)));
                };
                &aj * t
            }
            1 => {
                // the term just emitted is A_j T(k)
                if k >= 1 {
                    let t = rst.t(ki).expect("checked at r = 0");
                    if &aj * t < &aj + 5 * k + 2 {
                        return Ok(Some(Truncation::SideCondition {
                            k,
                            index: out.next(),
                        }));
                    }
                }
                BigInt::from(4)
            }
            2 => match rst.r(ki) {
                Some(x) => &five * x,
                None => return Ok(Some(ended(Which::R))),
            },
            3 => match rst.r(ki + 1) {
                Some(x) => &five * x,
                None => return Ok(Some(ended(Which::R))),
            },
            _ => match rst.s(ki + 1) {
                Some(x) => &five * x,
                None => return Ok(Some(ended(Which::S))),
            },
        };
        out.push(&v)?;
    }
    Ok(None)
}

/// [`predict`] without the auxiliary data.
pub fn predict_sequence<T: Term>(
    n: i64,
    max_terms: usize,
) -> Result<GeneratedSequence<T>, PredictError> {
    predict(n, max_terms).map(|p| p.sequence)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub index: usize,
    /// `None` when that side has no term at `index`.
    #[serde(serialize_with = "crate::ser::opt_bigint_str")]
    pub predicted: Option<BigInt>,
    #[serde(serialize_with = "crate::ser::opt_bigint_str")]
    pub actual: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredictionReport {
    pub n: i64,
    pub max_terms: usize,
    /// Number of leading terms on which both agree.
    pub matched_through: usize,
    pub first_mismatch: Option<Mismatch>,
    /// Same length and same terminal status.
    pub terminal_agreement: bool,
    pub predicted_status: SequenceStatus,
    pub actual_status: SequenceStatus,
    pub truncation: Option<Truncation>,
    pub j: JIndex,
    pub classification: Option<u8>,
}

impl PredictionReport {
    /// No disagreement anywhere the prediction makes a claim.
    pub fn consistent(&self) -> bool {
        self.first_mismatch.is_none() && (self.terminal_agreement || self.truncation.is_some())
    }

    /// Full agreement, including length and status.
    pub fn exact(&self) -> bool {
        self.first_mismatch.is_none() && self.terminal_agreement
    }
}

fn compare<T: Term>(
    n: i64,
    max_terms: usize,
    pred: &Prediction<T>,
    actual: &GeneratedSequence<T>,
) -> PredictionReport {
    let (p, a) = (pred.sequence.terms(), actual.terms());
    let common = p.len().min(a.len());
    let matched = p[..common]
        .iter()
        .zip(&a[..common])
        .take_while(|(x, y)| x == y)
        .count();
    let first_mismatch = if matched < common {
        Some(Mismatch {
            index: matched + 1,
            predicted: Some(p[matched].to_bigint()),
            actual: Some(a[matched].to_bigint()),
        })
    } else if p.len() > a.len() || (a.len() > p.len() && pred.truncation.is_none()) {
        Some(Mismatch {
            index: common + 1,
            predicted: p.get(common).map(Term::to_bigint),
            actual: a.get(common).map(Term::to_bigint),
        })
    } else {
        None
    };
    PredictionReport {
        n,
        max_terms,
        matched_through: matched,
        first_mismatch,
        terminal_agreement: p.len() == a.len() && pred.sequence.status() == actual.status(),
        predicted_status: pred.sequence.status(),
        actual_status: actual.status(),
        truncation: pred.truncation,
        j: pred.profile.j,
        classification: pred.profile.classification,
    }
}

fn verify_with<T: Term>(n: i64, max_terms: usize) -> Result<PredictionReport, PredictError> {
    let pred = predict::<T>(n, max_terms)?;
    let ic = InitialCondition::zero_extended_identity(n as usize);
    let actual = evaluate::<T>(&ic, max_terms)?;
    Ok(compare(n, max_terms, &pred, &actual))
}

/// Runs the engine and the predictor side by side. 64-bit arithmetic is tried
/// first; on overflow both sides are recomputed exactly.
pub fn verify_against_bruteforce(n: i64, max_terms: usize) -> Result<PredictionReport, PredictError> {
    match verify_with::<i64>(n, max_terms) {
        Err(PredictError::Overflow { .. }) | Err(PredictError::Engine(EngineError::Overflow { .. })) => {
            verify_with::<BigInt>(n, max_terms)
        }
        other => other,
    }
}
