//! Text formats: the initial-condition mini-language, OEIS b-files and
//! two-column CSV.
//!
//! Initial conditions:
//!
//! ```text
//! ic    := ["0:"] item ("," item)*
//! item  := int | int ".." int
//! int   := ["-"] digit+
//! ```
//!
//! The `0:` prefix selects the zero-extended convention; `a..b` expands to
//! `a, a+1, ..., b` and requires `a <= b`.

use std::io::{self, Write};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::engine::{EngineError, InitialCondition, SequenceStatus};
use crate::term::Term;

/// Longest initial condition the parser will expand a range into.
pub const MAX_IC_LEN: usize = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("empty initial condition")]
    Empty,
    #[error("bad integer {0:?}")]
    BadInteger(String),
    #[error("range {0:?} is decreasing")]
    DecreasingRange(String),
    #[error("initial condition longer than {MAX_IC_LEN} terms")]
    TooLong,
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("line {line}: {message}")]
    BFile { line: usize, message: String },
}

fn parse_int(s: &str) -> Result<i64, FormatError> {
    let s = s.trim();
    s.parse().map_err(|_| FormatError::BadInteger(s.to_string()))
}

pub fn parse_initial_condition(text: &str) -> Result<InitialCondition, FormatError> {
    let text = text.trim();
    let (zero_extended, body) = match text.strip_prefix("0:") {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    if body.trim().is_empty() {
        return Err(FormatError::Empty);
    }
    let mut terms = Vec::new();
    for item in body.split(',') {
        match item.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (parse_int(a)?, parse_int(b)?);
                if a > b {
                    return Err(FormatError::DecreasingRange(item.trim().to_string()));
                }
                if (b - a) as u64 >= (MAX_IC_LEN - terms.len()) as u64 {
                    return Err(FormatError::TooLong);
                }
                terms.extend(a..=b);
            }
            None => terms.push(parse_int(item)?),
        }
        if terms.len() > MAX_IC_LEN {
            return Err(FormatError::TooLong);
        }
    }
    Ok(InitialCondition::new(terms, zero_extended)?)
}

/// Compact form accepted by [`parse_initial_condition`]; runs of consecutive
/// integers collapse to ranges.
pub fn format_initial_condition(ic: &InitialCondition) -> String {
    let t = ic.terms();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < t.len() {
        let mut j = i;
        while j + 1 < t.len() && t[j + 1] == t[j] + 1 {
            j += 1;
        }
        if j >= i + 2 {
            parts.push(format!("{}..{}", t[i], t[j]));
        } else {
            parts.extend(t[i..=j].iter().map(i64::to_string));
        }
        i = j + 1;
    }
    let body = parts.join(",");
    if ic.zero_extended() {
        format!("0:{body}")
    } else {
        body
    }
}

/// Writes `first_index value` lines and, for a terminated sequence, a final
/// `# died at n` / `# ended at n` comment.
pub fn write_bfile<T: Term, W: Write>(
    mut w: W,
    terms: &[T],
    first_index: usize,
    status: Option<SequenceStatus>,
) -> io::Result<()> {
    for (i, t) in terms.iter().enumerate() {
        writeln!(w, "{} {}", first_index + i, t)?;
    }
    if let Some(s @ (SequenceStatus::Died { .. } | SequenceStatus::Ended { .. })) = status {
        writeln!(w, "# {s}")?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFile {
    pub first_index: usize,
    pub values: Vec<BigInt>,
    /// From a trailing status comment, if present.
    pub status: Option<SequenceStatus>,
}

pub fn parse_bfile(text: &str) -> Result<BFile, FormatError> {
    let mut out = BFile {
        first_index: 1,
        values: Vec::new(),
        status: None,
    };
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |message: String| FormatError::BFile {
            line: ln + 1,
            message,
        };
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            let parse_at = |s: &str| s.trim().parse::<usize>().map_err(|_| err(format!("bad index {s:?}")));
            if let Some(n) = comment.strip_prefix("died at ") {
                out.status = Some(SequenceStatus::Died {
                    at_index: parse_at(n)?,
                });
            } else if let Some(n) = comment.strip_prefix("ended at ") {
                out.status = Some(SequenceStatus::Ended {
                    at_index: parse_at(n)?,
                });
            }
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(n), Some(v), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err("expected two fields".into()));
        };
        let n: usize = n.parse().map_err(|_| err(format!("bad index {n:?}")))?;
        let v: BigInt = v.parse().map_err(|_| err(format!("bad value {v:?}")))?;
        if out.values.is_empty() {
            out.first_index = n;
        } else if n != out.first_index + out.values.len() {
            return Err(err(format!("index {n} out of sequence")));
        }
        out.values.push(v);
    }
    Ok(out)
}

/// `n,value` rows. With `log_log`, both columns are base-10 logarithms and
/// rows with a non-positive value are omitted.
pub fn write_csv<T: Term, W: Write>(
    mut w: W,
    terms: &[T],
    first_index: usize,
    log_log: bool,
) -> io::Result<()> {
    if log_log {
        writeln!(w, "log10_n,log10_value")?;
    } else {
        writeln!(w, "n,value")?;
    }
    for (i, t) in terms.iter().enumerate() {
        let n = first_index + i;
        if !log_log {
            writeln!(w, "{n},{t}")?;
            continue;
        }
        let v = t.to_bigint();
        if n == 0 || !v.is_positive() {
            continue;
        }
        writeln!(w, "{:.6},{:.6}", (n as f64).log10(), log10_big(&v))?;
    }
    Ok(())
}

fn log10_big(v: &BigInt) -> f64 {
    match v.to_f64() {
        Some(f) if f.is_finite() => f.log10(),
        _ => {
            let s = v.to_string();
            let head: f64 = format!("0.{}", &s[..s.len().min(17)]).parse().unwrap_or(0.1);
            s.len() as f64 + head.log10()
        }
    }
}
