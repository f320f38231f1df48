//! Detection of quasilinear stretches: index ranges on which every residue
//! class modulo a period is an exactly affine subsequence.

use num_bigint::BigInt;
use serde::Serialize;

use crate::engine::GeneratedSequence;
use crate::term::Term;

/// `term(period * k + residue) = slope * k + intercept` inside a segment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueLine {
    pub residue: usize,
    #[serde(serialize_with = "crate::ser::bigint_str")]
    pub slope: BigInt,
    #[serde(serialize_with = "crate::ser::bigint_str")]
    pub intercept: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
    pub period: usize,
    /// One line per residue `0..period`.
    pub lines: Vec<ResidueLine>,
}

impl Segment {
    /// Number of indices covered.
    pub fn span(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn line(&self, residue: usize) -> &ResidueLine {
        &self.lines[residue]
    }

    pub fn contains(&self, index: usize) -> bool {
        (self.start..=self.end).contains(&index)
    }
}

/// `t(i) - t(i-p) != t(i-p) - t(i-2p)`, where `terms[x - 1]` is index `x`.
fn breaks_line<T: Term>(terms: &[T], i: usize, p: usize) -> bool {
    let (a, b, c) = (&terms[i - 1], &terms[i - 1 - p], &terms[i - 1 - 2 * p]);
    match (a.checked_add(c), b.checked_add(b)) {
        (Some(lhs), Some(rhs)) => lhs != rhs,
        _ => a.to_bigint() + c.to_bigint() != b.to_bigint() * 2,
    }
}

fn lines_for<T: Term>(terms: &[T], start: usize, period: usize) -> Vec<ResidueLine> {
    (0..period)
        .map(|residue| {
            let first = start + (residue + period - start % period) % period;
            let y1 = terms[first - 1].to_bigint();
            let y2 = terms[first + period - 1].to_bigint();
            let slope = &y2 - &y1;
            let intercept = y1 - &slope * BigInt::from(first / period);
            ResidueLine {
                residue,
                slope,
                intercept,
            }
        })
        .collect()
}

/// Maximal quasilinear segments starting at or after `from_index` that span
/// at least two full periods.
pub fn detect_quasilinear<T: Term>(
    seq: &GeneratedSequence<T>,
    period: usize,
    from_index: usize,
) -> Vec<Segment> {
    detect_quasilinear_min_len(seq, period, from_index, 2 * period)
}

/// As [`detect_quasilinear`], keeping only segments of at least `min_len`
/// indices (never fewer than two periods).
pub fn detect_quasilinear_min_len<T: Term>(
    seq: &GeneratedSequence<T>,
    period: usize,
    from_index: usize,
    min_len: usize,
) -> Vec<Segment> {
    let terms = seq.terms();
    let len = terms.len();
    if period == 0 || from_index == 0 || from_index > len {
        return Vec::new();
    }
    let min_len = min_len.max(2 * period);
    let mut out = Vec::new();
    let mut push = |start: usize, end: usize| {
        if end >= start && end + 1 - start >= min_len {
            out.push(Segment {
                start,
                end,
                period,
                lines: lines_for(terms, start, period),
            });
        }
    };
    // A window [s, e] is quasilinear iff no index i in [s + 2p, e] breaks its
    // residue line, so maximal windows sit between consecutive breaks.
    let mut start = from_index;
    for i in from_index + 2 * period..=len {
        if breaks_line(terms, i, period) {
            push(start, i - 1);
            start = i + 1 - 2 * period;
        }
    }
    push(start, len);
    out
}

/// Whether `[start, end]` is quasilinear with the given period.
pub fn is_quasilinear<T: Term>(terms: &[T], start: usize, end: usize, period: usize) -> bool {
    period > 0
        && start >= 1
        && end <= terms.len()
        && end + 1 >= start + 2 * period
        && (start + 2 * period..=end).all(|i| !breaks_line(terms, i, period))
}

/// Smallest period `<= max_period` for which `[start, end]` is quasilinear.
pub fn smallest_period<T: Term>(
    terms: &[T],
    start: usize,
    end: usize,
    max_period: usize,
) -> Option<usize> {
    (1..=max_period).find(|&p| is_quasilinear(terms, start, end, p))
}
