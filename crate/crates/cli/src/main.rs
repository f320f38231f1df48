use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use qlab::formats::{format_initial_condition, parse_initial_condition, write_bfile, write_csv};
use qlab::predictor::ChunkSpan;
use qlab::rst::{cycle_overhang, RstStatus};
use qlab::{
    abc_profile, behavior_tree, evaluate, is_exceptional, predict, qc_pattern_check,
    qt_pattern_check, rst_compute, symbolic_extend, verify_against_bruteforce, BigInt,
    Convention, GeneratedSequence, Hypotheses, InitialCondition, IntegerMode, NConstraint,
    PredictError, SequenceStatus, Term,
};

mod error;

use error::CliError;

#[derive(Parser)]
#[command(name = "qlab", version, about = "Explore solutions of Q(n) = Q(n-Q(n-1)) + Q(n-Q(n-2))")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Bfile,
    Csv,
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    #[arg(long, short, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate terms from an initial condition such as "0:1..42" or "3,2,1".
    Gen {
        #[arg(long)]
        ic: String,
        #[arg(long = "max", default_value_t = 1000)]
        max_terms: usize,
        #[arg(long, env = "QLAB_INT_MODE", default_value = "fast64")]
        mode: IntegerMode,
        /// CSV only: emit base-10 logarithms of both columns.
        #[arg(long)]
        log_log: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Derive the first terms after <1..N> or <0; 1..N> as affine functions of N.
    Sym {
        #[arg(long, value_enum, default_value = "plain")]
        convention: ConventionArg,
        #[arg(long, default_value_t = 14)]
        nmin: i64,
        #[arg(long)]
        nmax: Option<i64>,
        #[arg(long, default_value_t = 28)]
        offsets: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Compute the R, S, T system, or check one of its interleaving patterns.
    Rst {
        #[arg(long, default_value_t = 100)]
        n_max: usize,
        /// Sequence to emit in b-file or CSV form.
        #[arg(long, value_enum, default_value = "r")]
        which: WhichArg,
        /// Check the pattern of <0; prefix, 5, lambda, 4, mu> (or, with
        /// --chunk, of <0; prefix, mu, 5, lambda, 3>).
        #[arg(long, requires = "mu")]
        lambda: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<i64>,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        prefix: String,
        #[arg(long, default_value_t = 1000)]
        k_max: usize,
        #[arg(long)]
        chunk: bool,
        /// Run the check even when the hypotheses on lambda and mu fail.
        #[arg(long)]
        relax: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Print the A/B/C profile of N.
    Profile {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Predict <0; 1..N> from the profile of N.
    Predict {
        #[arg(long)]
        n: i64,
        #[arg(long = "max", default_value_t = 10_000)]
        max_terms: usize,
        #[arg(long, env = "QLAB_INT_MODE", default_value = "fast64")]
        mode: IntegerMode,
        #[command(flatten)]
        common: Common,
    },
    /// Compare prediction and brute force for one N or a range.
    Verify {
        #[arg(long, conflicts_with_all = ["from", "to"])]
        n: Option<i64>,
        #[arg(long, requires = "to")]
        from: Option<i64>,
        #[arg(long, requires = "from")]
        to: Option<i64>,
        #[arg(long = "max", default_value_t = 200_000)]
        max_terms: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Build the base-5 classification tree.
    Tree {
        #[arg(long, default_value_t = 3)]
        levels: usize,
        /// Report the node reached by the base-5 digits of this N.
        #[arg(long)]
        locate: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// Brute-force <0; 1..N> for every N in a range and summarise each run.
    Scan {
        #[arg(long)]
        from: i64,
        #[arg(long)]
        to: i64,
        #[arg(long = "max", default_value_t = 100_000)]
        max_terms: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Plain,
    ZeroExtended,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichArg {
    R,
    S,
    T,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn sink(common: &Common) -> Result<Box<dyn Write>, CliError> {
    match &common.output {
        Some(path) => {
            let f = File::create(path)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(Box::new(BufWriter::new(f)))
        }
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

fn pick(common: &Common, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
    let f = common.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(format!(
            "format {f:?} is not available for this command"
        )))
    }
}

fn write_json<W: Write, S: Serialize>(mut w: W, value: &S) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut w, value).map_err(io::Error::from)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn sequence_json<T: Term>(seq: &GeneratedSequence<T>) -> serde_json::Value {
    json!({
        "initial_condition": format_initial_condition(seq.initial_condition()),
        "length": seq.len(),
        "status": seq.status(),
        "terms": seq.terms().iter().map(Term::to_json).collect::<Vec<_>>(),
    })
}

fn emit_sequence<T: Term>(
    seq: &GeneratedSequence<T>,
    format: Format,
    log_log: bool,
    mut w: Box<dyn Write>,
) -> Result<(), CliError> {
    match format {
        Format::Bfile => write_bfile(&mut w, seq.terms(), 1, Some(seq.status()))?,
        Format::Csv => write_csv(&mut w, seq.terms(), 1, log_log)?,
        Format::Json => return write_json(w, &sequence_json(seq)),
        Format::Text => {
            let line: Vec<String> = seq.terms().iter().map(ToString::to_string).collect();
            writeln!(w, "{}", line.join(" "))?;
            writeln!(w, "# {} terms, {}", seq.len(), seq.status())?;
        }
    }
    w.flush()?;
    Ok(())
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Gen {
            ic,
            max_terms,
            mode,
            log_log,
            common,
        } => {
            let format = pick(&common, Format::Bfile, &[Format::Bfile, Format::Csv, Format::Json, Format::Text])?;
            let ic = parse_initial_condition(&ic)?;
            match mode {
                IntegerMode::Fast64 => {
                    let seq = evaluate::<i64>(&ic, max_terms)?;
                    emit_sequence(&seq, format, log_log, sink(&common)?)
                }
                IntegerMode::Exact => {
                    let seq = evaluate::<BigInt>(&ic, max_terms)?;
                    emit_sequence(&seq, format, log_log, sink(&common)?)
                }
            }
        }
        Command::Sym {
            convention,
            nmin,
            nmax,
            offsets,
            common,
        } => {
            let format = pick(&common, Format::Text, &[Format::Text, Format::Json])?;
            let convention = match convention {
                ConventionArg::Plain => Convention::Plain,
                ConventionArg::ZeroExtended => Convention::ZeroExtended,
            };
            let constraint = match nmax {
                Some(hi) => NConstraint::between(nmin, hi),
                None => NConstraint::at_least(nmin),
            };
            let prefix = symbolic_extend(convention, constraint, offsets)?;
            let mut w = sink(&common)?;
            match format {
                Format::Json => write_json(w, &prefix),
                _ => {
                    if let Some(b) = prefix.overall_min_valid_n() {
                        writeln!(w, "# all terms valid for N >= {b}")?;
                    }
                    w.write_all(prefix.to_text().as_bytes())?;
                    w.flush()?;
                    Ok(())
                }
            }
        }
        Command::Rst {
            n_max,
            which,
            lambda,
            mu,
            prefix,
            k_max,
            chunk,
            relax,
            common,
        } => {
            if let (Some(lambda), Some(mu)) = (lambda, mu) {
                return rst_pattern(&prefix, lambda, mu, k_max, chunk, relax, &common);
            }
            let format = pick(&common, Format::Bfile, &[Format::Bfile, Format::Csv, Format::Json])?;
            let st = rst_compute::<i64>(n_max)?;
            let mut w = sink(&common)?;
            if format == Format::Json {
                return write_json(
                    w,
                    &json!({
                        "n_max": n_max,
                        "status": st.status(),
                        "r_from": 1,
                        "r": st.r_values(),
                        "s_from": 0,
                        "s": st.s_values(),
                        "t_from": 0,
                        "t": st.t_values(),
                    }),
                );
            }
            let (values, first) = match which {
                WhichArg::R => (st.r_values(), 1),
                WhichArg::S => (st.s_values(), 0),
                WhichArg::T => (st.t_values(), 0),
            };
            match format {
                Format::Csv => write_csv(&mut w, values, first, false)?,
                _ => {
                    write_bfile(&mut w, values, first, None)?;
                    if let RstStatus::Ended { which, at_index } = st.status() {
                        writeln!(w, "# ended at {which:?}({at_index})")?;
                    }
                }
            }
            w.flush()?;
            Ok(())
        }
        Command::Profile { n, depth, common } => {
            let format = pick(&common, Format::Json, &[Format::Json, Format::Text])?;
            let p = abc_profile(n, depth)?;
            let mut w = sink(&common)?;
            if format == Format::Json {
                return write_json(w, &p);
            }
            for i in 1..=p.c.len() {
                writeln!(
                    w,
                    "i={i} A={} B={} C={} C'={}",
                    p.a(i),
                    p.b(i),
                    p.c(i),
                    p.c_prime(i)
                )?;
            }
            match p.classification {
                Some(c) => writeln!(w, "j={} classification={c}", p.j().unwrap_or(0))?,
                None => writeln!(w, "j unresolved through depth {depth}")?,
            }
            w.flush()?;
            Ok(())
        }
        Command::Predict {
            n,
            max_terms,
            mode,
            common,
        } => {
            let format = pick(&common, Format::Bfile, &[Format::Bfile, Format::Csv, Format::Json, Format::Text])?;
            match mode {
                IntegerMode::Fast64 => emit_prediction::<i64>(n, max_terms, format, &common),
                IntegerMode::Exact => emit_prediction::<BigInt>(n, max_terms, format, &common),
            }
        }
        Command::Verify {
            n,
            from,
            to,
            max_terms,
            common,
        } => {
            let format = pick(&common, Format::Json, &[Format::Json, Format::Text, Format::Csv])?;
            match (n, from, to) {
                (Some(n), _, _) => {
                    let r = verify_against_bruteforce(n, max_terms)?;
                    let mut w = sink(&common)?;
                    match format {
                        Format::Json => write_json(w, &r),
                        _ => {
                            writeln!(w, "{}", verify_line(&r))?;
                            w.flush()?;
                            Ok(())
                        }
                    }
                }
                (None, Some(a), Some(b)) => verify_range(a, b, max_terms, format, &common),
                _ => Err(CliError::Usage("give --n or --from/--to".into())),
            }
        }
        Command::Tree {
            levels,
            locate,
            common,
        } => {
            let format = pick(&common, Format::Text, &[Format::Text, Format::Json])?;
            let tree = behavior_tree(levels)?;
            let mut w = sink(&common)?;
            if let Some(n) = locate {
                let node = tree.traverse(&BigInt::from(n));
                return match format {
                    Format::Json => write_json(w, &json!({"n": n, "digits": node.digits, "node": node.kind})),
                    _ => {
                        let label = match node.kind {
                            qlab::NodeKind::Leaf { class } => format!("{}:{class}", node.digits),
                            _ => format!("{}:...", node.digits),
                        };
                        writeln!(w, "{label}")?;
                        w.flush()?;
                        Ok(())
                    }
                };
            }
            match format {
                Format::Json => write_json(w, &tree),
                _ => {
                    w.write_all(tree.to_text().as_bytes())?;
                    w.flush()?;
                    Ok(())
                }
            }
        }
        Command::Scan {
            from,
            to,
            max_terms,
            common,
        } => scan(from, to, max_terms, &common),
    }
}

fn emit_prediction<T: Term>(
    n: i64,
    max_terms: usize,
    format: Format,
    common: &Common,
) -> Result<(), CliError> {
    let p = predict::<T>(n, max_terms)?;
    let w = sink(common)?;
    if format == Format::Json {
        #[derive(Serialize)]
        struct Out<'a> {
            n: i64,
            profile: &'a qlab::StructureProfile,
            chunks: &'a [ChunkSpan],
            truncation: Option<qlab::Truncation>,
            sequence: serde_json::Value,
        }
        return write_json(
            w,
            &Out {
                n,
                profile: &p.profile,
                chunks: &p.chunks,
                truncation: p.truncation,
                sequence: sequence_json(&p.sequence),
            },
        );
    }
    emit_sequence(&p.sequence, format, false, w)
}

fn verify_line(r: &qlab::PredictionReport) -> String {
    let verdict = if r.exact() {
        "agree".to_string()
    } else if let Some(m) = &r.first_mismatch {
        let show = |v: &Option<BigInt>| v.as_ref().map_or("-".to_string(), ToString::to_string);
        format!(
            "mismatch at {}: predicted {} actual {}",
            m.index,
            show(&m.predicted),
            show(&m.actual)
        )
    } else if let Some(t) = r.truncation {
        format!("agree through truncation {t:?}")
    } else {
        format!(
            "status differs: predicted {} actual {}",
            r.predicted_status, r.actual_status
        )
    };
    format!(
        "N={} matched_through={} status={} {verdict}",
        r.n, r.matched_through, r.actual_status
    )
}

fn verify_range(
    from: i64,
    to: i64,
    max_terms: usize,
    format: Format,
    common: &Common,
) -> Result<(), CliError> {
    if from > to {
        return Err(CliError::Usage(format!("empty range {from}..{to}")));
    }
    let ns: Vec<i64> = (from..=to).filter(|&n| n >= 35 && !is_exceptional(n)).collect();
    let reports = ns
        .par_iter()
        .map(|&n| verify_against_bruteforce(n, max_terms))
        .collect::<Result<Vec<_>, PredictError>>()?;
    let mut w = sink(common)?;
    match format {
        Format::Json => return write_json(w, &reports),
        Format::Csv => {
            writeln!(w, "n,matched_through,exact,status")?;
            for r in &reports {
                writeln!(w, "{},{},{},{}", r.n, r.matched_through, r.exact(), r.actual_status)?;
            }
        }
        _ => {
            for r in &reports {
                writeln!(w, "{}", verify_line(r))?;
            }
            let bad = reports.iter().filter(|r| !r.exact()).count();
            writeln!(w, "# {} values of N checked, {bad} disagreements", reports.len())?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct ScanRow {
    n: i64,
    j: Option<usize>,
    classification: Option<u8>,
    exceptional: bool,
    outcome: SequenceStatus,
    length: usize,
}

fn scan(from: i64, to: i64, max_terms: usize, common: &Common) -> Result<(), CliError> {
    let format = pick(common, Format::Csv, &[Format::Csv, Format::Json])?;
    if from < 1 || from > to {
        return Err(CliError::Usage(format!("bad range {from}..{to}")));
    }
    let rows = (from..=to)
        .into_par_iter()
        .map(|n| -> Result<ScanRow, CliError> {
            let ic = InitialCondition::zero_extended_identity(n as usize);
            let seq = evaluate::<i64>(&ic, max_terms.max(n as usize))?;
            let p = abc_profile(n, 16)?;
            Ok(ScanRow {
                n,
                j: p.j(),
                classification: p.classification,
                exceptional: n < 35 || is_exceptional(n),
                outcome: seq.status(),
                length: seq.len(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut w = sink(common)?;
    if format == Format::Json {
        return write_json(w, &rows);
    }
    writeln!(w, "n,j,classification,exceptional,outcome")?;
    for r in &rows {
        let opt = |v: Option<String>| v.unwrap_or_default();
        let outcome = match r.outcome {
            SequenceStatus::Alive => format!("alive>={}", r.length),
            SequenceStatus::Died { .. } => format!("died:{}", r.length),
            SequenceStatus::Ended { .. } => format!("ended:{}", r.length),
        };
        writeln!(
            w,
            "{},{},{},{},{outcome}",
            r.n,
            opt(r.j.map(|j| j.to_string())),
            opt(r.classification.map(|c| c.to_string())),
            r.exceptional,
        )?;
    }
    w.flush()?;
    Ok(())
}

fn rst_pattern(
    prefix: &str,
    lambda: i64,
    mu: i64,
    k_max: usize,
    chunk: bool,
    relax: bool,
    common: &Common,
) -> Result<(), CliError> {
    let format = pick(common, Format::Json, &[Format::Json, Format::Text])?;
    let prefix: Vec<i64> = if prefix.trim().is_empty() {
        Vec::new()
    } else {
        parse_initial_condition(prefix)?.terms().to_vec()
    };
    let hyp = if relax { Hypotheses::Relax } else { Hypotheses::Enforce };
    let mut w = sink(common)?;
    if chunk {
        let r = qc_pattern_check(&prefix, mu, lambda, k_max, hyp)?;
        if format == Format::Json {
            return write_json(w, &r);
        }
        writeln!(
            w,
            "nu={} guaranteed_through={} holds_through={} {}",
            cycle_overhang(prefix.len(), lambda),
            r.guaranteed_through,
            r.holds_through_index,
            if r.holds() { "holds" } else { "fails" }
        )?;
    } else {
        let r = qt_pattern_check(&prefix, lambda, mu, k_max, hyp)?;
        if format == Format::Json {
            return write_json(w, &r);
        }
        match r.first_violation {
            None => writeln!(w, "holds for k = 1..{}", r.holds_through_k)?,
            Some(v) => writeln!(
                w,
                "violation at index {}: expected {} got {}",
                v.index,
                v.expected,
                v.actual.map_or("-".to_string(), |a| a.to_string())
            )?,
        }
        if let Some(k) = r.side_condition_fails_at {
            writeln!(w, "side condition fails at k = {k}")?;
        }
    }
    w.flush()?;
    Ok(())
}
