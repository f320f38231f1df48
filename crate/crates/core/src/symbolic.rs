//! Symbolic evaluation of the terms following `<1, 2, ..., N>` as affine
//! functions of the parameter `N`.
//!
//! Each derived term carries the range of `N` on which every fact used so far
//! holds. Facts come in two flavours:
//!
//! * membership facts `Q(c) = c` (needs `N >= c`) and `Q(N - c) = N - c`
//!   (needs `N >= c + 1`). These narrow the running lower bound freely.
//! * sign facts, which must hold for every `N` in the caller's constraint:
//!   an index provably `<= 0` (value 0, or death under the plain convention)
//!   and an index with non-unit coefficient provably inside `1..=N`.
//!
//! The derivation never splits on `N`. Ranges such as `14 <= N <= 20` are
//! supplied by the caller.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolicError {
    #[error("constraint lower bound must be at least 2 (got {0})")]
    LowerBoundTooSmall(i64),
    #[error("empty constraint: {lo} > {hi}")]
    EmptyConstraint { lo: i64, hi: i64 },
    #[error("N = {n} violates the bound {bound} of the term at offset {offset}")]
    BoundViolated {
        n: i64,
        offset: usize,
        bound: String,
    },
    #[error("overflow specializing the term at offset {offset}")]
    Overflow { offset: usize },
}

/// `a * N + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Affine {
    pub a: i64,
    pub b: i64,
}

impl Affine {
    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub const fn constant(b: i64) -> Self {
        Self { a: 0, b }
    }

    pub fn at(&self, n: i64) -> Option<i64> {
        self.a.checked_mul(n)?.checked_add(self.b)
    }

    fn at_wide(&self, n: i64) -> i128 {
        self.a as i128 * n as i128 + self.b as i128
    }
}

impl std::ops::Add for Affine {
    type Output = Affine;

    fn add(self, rhs: Affine) -> Affine {
        Affine::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.a {
            0 => return write!(f, "{}", self.b),
            1 => f.write_str("N")?,
            -1 => f.write_str("-N")?,
            a => write!(f, "{a}N")?,
        }
        match self.b {
            0 => Ok(()),
            b if b > 0 => write!(f, "+{b}"),
            b => write!(f, "{b}"),
        }
    }
}

/// `lo <= N <= hi`, with `hi = None` meaning unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NConstraint {
    pub lo: i64,
    pub hi: Option<i64>,
}

impl NConstraint {
    pub fn at_least(lo: i64) -> Self {
        Self { lo, hi: None }
    }

    pub fn between(lo: i64, hi: i64) -> Self {
        Self { lo, hi: Some(hi) }
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= self.lo && self.hi.is_none_or(|h| n <= h)
    }
}

impl fmt::Display for NConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(h) => write!(f, "{} <= N <= {h}", self.lo),
            None => write!(f, "N >= {}", self.lo),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    Plain,
    ZeroExtended,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Source {
    /// Inside the initial condition: `Q(e) = e`.
    Initial,
    /// A previously derived term `N + offset`.
    Derived { offset: usize },
    /// Zero-extended convention, index provably `<= 0`.
    Zero,
}

/// One resolved lookup `Q(index) = value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reference {
    pub index: Affine,
    pub source: Source,
    pub value: Affine,
}

/// Term at index `N + offset`, valid for `min_valid_n <= N <= max_valid_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineTerm {
    pub offset: usize,
    pub value: Affine,
    #[serde(rename = "min_valid_N")]
    pub min_valid_n: i64,
    #[serde(rename = "max_valid_N")]
    pub max_valid_n: Option<i64>,
    pub derivation: [Reference; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StopReason {
    Completed,
    /// The lookup `Q(expression)` needed for `N + offset` could not be
    /// resolved uniformly over the constraint.
    Unresolved { offset: usize, expression: Affine },
    /// Plain convention: the lookup index is `<= 0` for every admissible `N`.
    SymbolicDeath { offset: usize, expression: Affine },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicPrefix {
    pub convention: Convention,
    pub constraint: NConstraint,
    /// Terms at `N + 1, N + 2, ...`.
    pub terms: Vec<AffineTerm>,
    pub stop_reason: StopReason,
}

/// Running validity range; `hi = None` is unbounded, empty when `lo > hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Range {
    lo: i64,
    hi: Option<i64>,
}

impl Range {
    const ALL: Range = Range {
        lo: i64::MIN,
        hi: None,
    };
    const EMPTY: Range = Range { lo: 1, hi: Some(0) };

    fn meet(self, other: Range) -> Range {
        Range {
            lo: self.lo.max(other.lo),
            hi: match (self.hi, other.hi) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, None) => x,
                (None, y) => y,
            },
        }
    }

    fn is_empty(&self) -> bool {
        self.hi.is_some_and(|h| self.lo > h)
    }

    /// `{N : coef * N <= rhs}`.
    fn solve_le(coef: i64, rhs: i64) -> Range {
        use num_integer::Integer;
        match coef.signum() {
            0 if rhs >= 0 => Range::ALL,
            0 => Range::EMPTY,
            1 => Range {
                lo: i64::MIN,
                hi: Some(Integer::div_floor(&rhs, &coef)),
            },
            _ => Range {
                lo: Integer::div_ceil(&(-rhs), &(-coef)),
                hi: None,
            },
        }
    }
}

fn provably_nonpositive(e: Affine, c: &NConstraint) -> bool {
    match c.hi {
        Some(h) => e.at_wide(c.lo) <= 0 && e.at_wide(h) <= 0,
        None => e.a <= 0 && e.at_wide(c.lo) <= 0,
    }
}

fn provably_in_initial(e: Affine, c: &NConstraint) -> bool {
    match c.hi {
        Some(h) => [c.lo, h]
            .iter()
            .all(|&n| e.at_wide(n) >= 1 && e.at_wide(n) <= n as i128),
        None => false,
    }
}

enum Resolution {
    Value(Reference, Range),
    Death,
    Unresolved,
}

fn resolve(
    e: Affine,
    k: usize,
    derived: &[AffineTerm],
    convention: Convention,
    c: &NConstraint,
) -> Resolution {
    if e.a == 1 && e.b >= 1 && (e.b as usize) < k {
        let offset = e.b as usize;
        let value = derived[offset - 1].value;
        return Resolution::Value(
            Reference {
                index: e,
                source: Source::Derived { offset },
                value,
            },
            Range::ALL,
        );
    }
    if provably_nonpositive(e, c) {
        return match convention {
            Convention::Plain => Resolution::Death,
            Convention::ZeroExtended => Resolution::Value(
                Reference {
                    index: e,
                    source: Source::Zero,
                    value: Affine::constant(0),
                },
                Range::solve_le(e.a, -e.b),
            ),
        };
    }
    let initial = |range| {
        Resolution::Value(
            Reference {
                index: e,
                source: Source::Initial,
                value: e,
            },
            range,
        )
    };
    match (e.a, e.b) {
        // Q(c) = c needs N >= c
        (0, b) if b >= 1 => initial(Range { lo: b, hi: None }),
        // Q(N - c) = N - c needs N > c
        (1, b) if b <= 0 => initial(Range {
            lo: 1 - b,
            hi: None,
        }),
        _ if provably_in_initial(e, c) => {
            // 1 <= e and e <= N
            let range = Range::solve_le(-e.a, e.b - 1).meet(Range::solve_le(e.a - 1, -e.b));
            initial(range)
        }
        _ => Resolution::Unresolved,
    }
}

/// Derives up to `max_offsets` terms after the initial condition `<1..N>`
/// (or `<0; 1..N>`), stopping early when a lookup cannot be resolved.
pub fn symbolic_extend(
    convention: Convention,
    constraint: NConstraint,
    max_offsets: usize,
) -> Result<SymbolicPrefix, SymbolicError> {
    if constraint.lo < 2 {
        return Err(SymbolicError::LowerBoundTooSmall(constraint.lo));
    }
    if let Some(hi) = constraint.hi {
        if hi < constraint.lo {
            return Err(SymbolicError::EmptyConstraint {
                lo: constraint.lo,
                hi,
            });
        }
    }
    let whole = Range {
        lo: constraint.lo,
        hi: constraint.hi,
    };
    // Any step needs the two initial terms Q(N) and Q(N-1): N >= 2.
    let mut valid = Range { lo: 2, hi: None };
    let mut terms: Vec<AffineTerm> = Vec::with_capacity(max_offsets);
    let mut stop_reason = StopReason::Completed;

    let value_at = |terms: &[AffineTerm], offset: i64| -> Affine {
        // offsets 0 and -1 are the initial terms N and N - 1
        if offset <= 0 {
            Affine::new(1, offset)
        } else {
            terms[offset as usize - 1].value
        }
    };

    'offsets: for k in 1..=max_offsets {
        let mut refs = [Reference {
            index: Affine::constant(0),
            source: Source::Zero,
            value: Affine::constant(0),
        }; 2];
        let mut step_valid = valid;
        for (slot, back) in refs.iter_mut().zip([1i64, 2]) {
            let prev = value_at(&terms, k as i64 - back);
            let e = Affine::new(1 - prev.a, k as i64 - prev.b);
            match resolve(e, k, &terms, convention, &constraint) {
                Resolution::Value(r, range) => {
                    step_valid = step_valid.meet(range);
                    if step_valid.meet(whole).is_empty() {
                        stop_reason = StopReason::Unresolved {
                            offset: k,
                            expression: e,
                        };
                        break 'offsets;
                    }
                    *slot = r;
                }
                Resolution::Death => {
                    stop_reason = StopReason::SymbolicDeath {
                        offset: k,
                        expression: e,
                    };
                    break 'offsets;
                }
                Resolution::Unresolved => {
                    stop_reason = StopReason::Unresolved {
                        offset: k,
                        expression: e,
                    };
                    break 'offsets;
                }
            }
        }
        valid = step_valid;
        terms.push(AffineTerm {
            offset: k,
            value: refs[0].value + refs[1].value,
            min_valid_n: valid.lo,
            max_valid_n: valid.hi,
            derivation: refs,
        });
    }
    Ok(SymbolicPrefix {
        convention,
        constraint,
        terms,
        stop_reason,
    })
}

/// Concrete values `a * N + b` of every derived term, checking each term's
/// validity range.
pub fn specialize(prefix: &SymbolicPrefix, n: i64) -> Result<Vec<i64>, SymbolicError> {
    prefix
        .terms
        .iter()
        .map(|t| {
            if n < t.min_valid_n {
                return Err(SymbolicError::BoundViolated {
                    n,
                    offset: t.offset,
                    bound: format!("N >= {}", t.min_valid_n),
                });
            }
            if let Some(hi) = t.max_valid_n.filter(|&hi| n > hi) {
                return Err(SymbolicError::BoundViolated {
                    n,
                    offset: t.offset,
                    bound: format!("N <= {hi}"),
                });
            }
            t.value
                .at(n)
                .ok_or(SymbolicError::Overflow { offset: t.offset })
        })
        .collect()
}

impl SymbolicPrefix {
    /// Largest lower bound over all derived terms.
    pub fn overall_min_valid_n(&self) -> Option<i64> {
        self.terms.last().map(|t| t.min_valid_n)
    }

    pub fn values(&self) -> Vec<Affine> {
        self.terms.iter().map(|t| t.value).collect()
    }

    /// One line per derived term, e.g.
    /// `Q(N+2) = Q(N-1) + Q(2) = N-1 + 2 = N+1    (N>=2)`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let idx = |e: &Affine| format!("Q({e})");
        for t in &self.terms {
            let [r1, r2] = &t.derivation;
            let bound = match t.max_valid_n {
                Some(hi) => format!("({}<=N<={hi})", t.min_valid_n),
                None => format!("(N>={})", t.min_valid_n),
            };
            out.push_str(&format!(
                "Q(N+{}) = {} + {} = {} + {} = {}    {bound}\n",
                t.offset,
                idx(&r1.index),
                idx(&r2.index),
                r1.value,
                r2.value,
                t.value,
            ));
        }
        match self.stop_reason {
            StopReason::Completed => {}
            StopReason::Unresolved { offset, expression } => out.push_str(&format!(
                "# Q(N+{offset}) needs Q({expression}), unresolved under {}\n",
                self.constraint
            )),
            StopReason::SymbolicDeath { offset, expression } => out.push_str(&format!(
                "# Q(N+{offset}) needs Q({expression}) with a nonpositive index: dies\n"
            )),
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_display() {
        assert_eq!(Affine::new(2, 8).to_string(), "2N+8");
        assert_eq!(Affine::new(-1, 21).to_string(), "-N+21");
        assert_eq!(Affine::new(1, -1).to_string(), "N-1");
        assert_eq!(Affine::new(0, 3).to_string(), "3");
        assert_eq!(Affine::new(1, 0).to_string(), "N");
    }

    #[test]
    fn first_term_is_three() {
        let p = symbolic_extend(Convention::Plain, NConstraint::at_least(2), 1).unwrap();
        assert_eq!(p.terms.len(), 1);
        assert_eq!(p.terms[0].value, Affine::constant(3));
        assert_eq!(p.terms[0].min_valid_n, 2);
        assert_eq!(p.stop_reason, StopReason::Completed);
        assert_eq!(
            p.terms[0].derivation.map(|r| r.index),
            [Affine::constant(1), Affine::constant(2)]
        );
    }

    #[test]
    fn solve_le_rounding() {
        // 3N <= 7  ->  N <= 2
        assert_eq!(Range::solve_le(3, 7).hi, Some(2));
        // -2N <= -7 -> N >= 4
        assert_eq!(Range::solve_le(-2, -7).lo, 4);
        // -N <= -21 -> N >= 21
        assert_eq!(Range::solve_le(-1, -21).lo, 21);
        assert!(Range::solve_le(0, -1).is_empty());
    }

    #[test]
    fn rejects_bad_constraints() {
        assert_eq!(
            symbolic_extend(Convention::Plain, NConstraint::at_least(1), 3).unwrap_err(),
            SymbolicError::LowerBoundTooSmall(1)
        );
        assert!(matches!(
            symbolic_extend(Convention::Plain, NConstraint::between(9, 4), 3),
            Err(SymbolicError::EmptyConstraint { .. })
        ));
    }

    #[test]
    fn plain_stops_dead_from_21() {
        let p = symbolic_extend(Convention::Plain, NConstraint::at_least(21), 40).unwrap();
        assert_eq!(p.terms.len(), 28);
        assert_eq!(
            p.stop_reason,
            StopReason::SymbolicDeath {
                offset: 29,
                expression: Affine::new(-1, 21)
            }
        );
    }

    #[test]
    fn specialize_checks_bounds() {
        let p = symbolic_extend(Convention::Plain, NConstraint::at_least(14), 28).unwrap();
        assert_eq!(specialize(&p, 42).unwrap()[27], 92);
        assert_eq!(specialize(&p, 13).unwrap()[1], 14);
        match specialize(&p, 12).unwrap_err() {
            SymbolicError::BoundViolated { bound, offset, .. } => {
                assert_eq!(bound, "N >= 13");
                assert_eq!(offset, 27);
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn json_certificate_shape() {
        let p = symbolic_extend(Convention::Plain, NConstraint::at_least(14), 2).unwrap();
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["terms"][1]["value"], serde_json::json!({"a": 1, "b": 1}));
        assert_eq!(v["terms"][1]["min_valid_N"], serde_json::json!(2));
        assert_eq!(
            v["terms"][1]["derivation"][0]["source"],
            serde_json::json!({"kind": "initial"})
        );
        assert_eq!(v["stop_reason"]["kind"], "completed");
    }
}
