//! The `kfib` command line.
//!
//! Exit statuses: 0 success, 1 verification failure or sum mismatch,
//! 2 usage error, 3 internal consistency failure.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bench::{run_bench, BenchRecord, Strategy};
use crate::closed_forms::{r_matrix, r_power_closed, s_matrix, s_power_closed};
use crate::error::Error;
use crate::exact::{Mat2, Params};
use crate::identities::{verify_grid, Bounds, Identity, IdentityReport};
use crate::sequences::{fib_fast, lucas_fast};
use crate::sums::{erratum_probe, sum, ErratumFinding, Method, StatedOutcome, SumKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "kfib",
    version,
    about = "Exact k-Fibonacci / k-Lucas numbers at arithmetic indexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
struct FormatArg {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print F(k, n) or L(k, n).
    Compute {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        /// Print the k-Lucas number instead.
        #[arg(long)]
        lucas: bool,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Sum F(k, ai) for i = 0..=n, optionally with alternating signs.
    Sum {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        a: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        alternating: bool,
        #[arg(long, value_enum, default_value_t = SumMethod::Closed)]
        method: SumMethod,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Check identities over a parameter grid.
    Verify {
        /// An identity name, or `all`.
        #[arg(long, default_value = "all")]
        identity: String,
        #[arg(long = "k-max", default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        k_max: u64,
        #[arg(long = "a-max", default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        a_max: u64,
        #[arg(long = "n-max", default_value_t = 20, value_parser = clap::value_parser!(i64).range(1..))]
        n_max: i64,
        #[arg(long = "m-max", default_value_t = 20, value_parser = clap::value_parser!(i64).range(1..))]
        m_max: i64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Print R_a^n or S_a^n from its closed form, cross-checked by binary powering.
    Matpow {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        a: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        matrix: WhichMatrix,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Time iterative, matrix-power and fast-doubling evaluation of F(k, n).
    Bench {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,
        /// One or more indexes (comma separated or repeated).
        #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u64).range(1..))]
        n: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "all")]
        strategy: Vec<StrategyArg>,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        reps: u64,
        #[command(flatten)]
        format: FormatArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SumMethod {
    Closed,
    Naive,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WhichMatrix {
    R,
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    All,
    Iterative,
    MatrixPow,
    FastDoubling,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_USAGE
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Compute {
            k,
            n,
            lucas,
            format,
        } => cmd_compute(k, n, lucas, format.format, out),
        Command::Sum {
            k,
            a,
            n,
            alternating,
            method,
            format,
        } => cmd_sum(k, a, n, alternating, method, format.format, out),
        Command::Verify {
            identity,
            k_max,
            a_max,
            n_max,
            m_max,
            format,
        } => {
            let bounds = Bounds {
                kmax: k_max,
                amax: a_max,
                nmax: n_max,
                mmax: m_max,
            };
            cmd_verify(&identity, bounds, format.format, out)
        }
        Command::Matpow {
            k,
            a,
            n,
            matrix,
            format,
        } => cmd_matpow(k, a, n, matrix, format.format, out),
        Command::Bench {
            k,
            n,
            strategy,
            reps,
            format,
        } => cmd_bench(k, &n, &strategy, reps as usize, format.format, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "kfib: {message}");
            code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParams(_) => EXIT_USAGE,
            _ => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<i32, Failure>;

fn emit_json(out: &mut dyn Write, v: &Value) -> std::io::Result<()> {
    writeln!(out, "{v}")
}

fn cmd_compute(k: u64, n: i64, lucas: bool, format: Format, out: &mut dyn Write) -> CmdResult {
    let (kind, value) = if lucas {
        ("lucas", lucas_fast(k, n))
    } else {
        ("fibonacci", fib_fast(k, n))
    };
    match format {
        Format::Text => writeln!(out, "{value}")?,
        Format::Json => emit_json(
            out,
            &json!({
                "k": k.to_string(),
                "n": n.to_string(),
                "kind": kind,
                "value": value.to_string(),
            }),
        )?,
    }
    Ok(EXIT_OK)
}

fn cmd_sum(
    k: u64,
    a: u64,
    n: u64,
    alternating: bool,
    method: SumMethod,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult {
    let p = Params::new(k, a)?;
    let kind = if alternating {
        SumKind::Alternating
    } else {
        SumKind::Plain
    };
    match method {
        SumMethod::Closed | SumMethod::Naive => {
            let m = if method == SumMethod::Closed {
                Method::Closed
            } else {
                Method::Naive
            };
            let r = sum(p, n, kind, m)?;
            match format {
                Format::Text => writeln!(out, "{}", r.value)?,
                Format::Json => emit_json(
                    out,
                    &json!({
                        "k": k.to_string(),
                        "a": a.to_string(),
                        "n": n.to_string(),
                        "kind": kind.to_string(),
                        "method": m.to_string(),
                        "value": r.value.to_string(),
                        "denominator": r.denominator.to_string(),
                    }),
                )?,
            }
            Ok(EXIT_OK)
        }
        SumMethod::Both => {
            let closed = sum(p, n, kind, Method::Closed)?;
            let naive = sum(p, n, kind, Method::Naive)?;
            let matched = closed.value == naive.value;
            match format {
                Format::Text => writeln!(
                    out,
                    "{} {} {}",
                    closed.value,
                    naive.value,
                    if matched { "MATCH" } else { "MISMATCH" }
                )?,
                Format::Json => emit_json(
                    out,
                    &json!({
                        "k": k.to_string(),
                        "a": a.to_string(),
                        "n": n.to_string(),
                        "kind": kind.to_string(),
                        "method": "both",
                        "value": closed.value.to_string(),
                        "naive": naive.value.to_string(),
                        "match": matched,
                        "denominator": closed.denominator.to_string(),
                    }),
                )?,
            }
            Ok(if matched { EXIT_OK } else { EXIT_VERIFY })
        }
    }
}

fn report_json(r: &IdentityReport) -> Value {
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| {
            let mut v = json!({
                "k": f.k.to_string(),
                "a": f.a.to_string(),
                "n": f.n.to_string(),
                "m": f.m.to_string(),
                "lhs": f.lhs.to_string(),
                "rhs": f.rhs.to_string(),
            });
            if let Some(e) = &f.error {
                v["error"] = json!(e);
            }
            v
        })
        .collect();
    json!({
        "identity": r.identity,
        "checked": r.checked.to_string(),
        "failures": failures,
    })
}

fn finding_json(f: &ErratumFinding) -> Value {
    let mut v = json!({
        "k": f.k.to_string(),
        "a": f.a.to_string(),
        "n": f.n.to_string(),
        "actual": f.actual.to_string(),
    });
    match &f.outcome {
        StatedOutcome::Agrees => v["outcome"] = json!("agrees"),
        StatedOutcome::Mismatch { stated } => {
            v["outcome"] = json!("mismatch");
            v["stated"] = json!(stated.to_string());
        }
        StatedOutcome::Inexact { num, den } => {
            v["outcome"] = json!("inexact");
            v["num"] = json!(num.to_string());
            v["den"] = json!(den.to_string());
        }
    }
    v
}

fn write_report_text(out: &mut dyn Write, r: &IdentityReport) -> std::io::Result<()> {
    writeln!(
        out,
        "{}: checked={} failures={} {}",
        r.identity,
        r.checked,
        r.failures.len(),
        if r.passed() { "PASS" } else { "FAIL" }
    )?;
    for f in &r.failures {
        write!(
            out,
            "  k={} a={} n={} m={} lhs={} rhs={}",
            f.k, f.a, f.n, f.m, f.lhs, f.rhs
        )?;
        match &f.error {
            Some(e) => writeln!(out, " ({e})")?,
            None => writeln!(out)?,
        }
    }
    Ok(())
}

fn write_probe_text(out: &mut dyn Write, findings: &[ErratumFinding]) -> std::io::Result<()> {
    let agree = findings
        .iter()
        .filter(|f| f.outcome == StatedOutcome::Agrees)
        .count();
    writeln!(
        out,
        "erratum probe: alternating-sum formula as displayed, odd n (informational): \
         agrees at {agree} of {} points",
        findings.len()
    )?;
    for f in findings {
        match &f.outcome {
            StatedOutcome::Agrees => {}
            StatedOutcome::Mismatch { stated } => writeln!(
                out,
                "  k={} a={} n={} stated={} actual={} MISMATCH",
                f.k, f.a, f.n, stated, f.actual
            )?,
            StatedOutcome::Inexact { num, den } => writeln!(
                out,
                "  k={} a={} n={} stated={}/{} actual={} INEXACT",
                f.k, f.a, f.n, num, den, f.actual
            )?,
        }
    }
    Ok(())
}

fn cmd_verify(identity: &str, bounds: Bounds, format: Format, out: &mut dyn Write) -> CmdResult {
    let suites: Vec<Identity> = if identity == "all" {
        Identity::ALL.to_vec()
    } else {
        vec![identity.parse()?]
    };
    let reports: Vec<IdentityReport> = suites.iter().map(|&id| verify_grid(id, bounds)).collect();
    let probe = (identity == "all" || identity == Identity::AltSum.name())
        .then(|| erratum_probe(bounds.kmax, bounds.amax, bounds.nmax.max(0) as u64));
    let all_pass = reports.iter().all(IdentityReport::passed);
    match format {
        Format::Text => {
            for r in &reports {
                write_report_text(out, r)?;
            }
            if let Some(findings) = &probe {
                write_probe_text(out, findings)?;
            }
            if reports.len() > 1 {
                writeln!(
                    out,
                    "{}",
                    if all_pass {
                        "all suites pass"
                    } else {
                        "some suites FAILED"
                    }
                )?;
            }
        }
        Format::Json => {
            let v = if identity == "all" {
                json!({
                    "suites": reports.iter().map(report_json).collect::<Vec<_>>(),
                    "erratum_probe": probe.iter().flatten().map(finding_json).collect::<Vec<_>>(),
                })
            } else {
                let mut v = report_json(&reports[0]);
                if let Some(findings) = &probe {
                    v["erratum_probe"] = findings.iter().map(finding_json).collect();
                }
                v
            };
            emit_json(out, &v)?;
        }
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_VERIFY })
}

fn matrix_json(m: &Mat2) -> Value {
    let cell = |i, j| {
        let (p, q) = m.entry(i, j);
        if q == 1.into() {
            p.to_string()
        } else {
            format!("{p}/{q}")
        }
    };
    json!([[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]])
}

fn cmd_matpow(
    k: u64,
    a: u64,
    n: u64,
    which: WhichMatrix,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult {
    let p = Params::new(k, a)?;
    let (closed, base, name) = match which {
        WhichMatrix::R => (r_power_closed(p, n)?, r_matrix(p), "r"),
        WhichMatrix::S => (s_power_closed(p, n)?, s_matrix(p), "s"),
    };
    let consistent = closed == base.pow(n);
    match format {
        Format::Text => writeln!(
            out,
            "{closed} {}",
            if consistent {
                "CONSISTENT"
            } else {
                "INCONSISTENT"
            }
        )?,
        Format::Json => emit_json(
            out,
            &json!({
                "k": k.to_string(),
                "a": a.to_string(),
                "n": n.to_string(),
                "matrix": name,
                "value": matrix_json(&closed),
                "consistent": consistent,
            }),
        )?,
    }
    if consistent {
        Ok(EXIT_OK)
    } else {
        Err(Failure {
            code: EXIT_INTERNAL,
            message: format!(
                "closed form disagrees with binary powering: {}",
                base.pow(n)
            ),
        })
    }
}

fn cmd_bench(
    k: u64,
    ns: &[u64],
    strategies: &[StrategyArg],
    reps: usize,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult {
    let mut chosen: Vec<Strategy> = Vec::new();
    for s in strategies {
        let add: &[Strategy] = match s {
            StrategyArg::All => &Strategy::ALL,
            StrategyArg::Iterative => &[Strategy::Iterative],
            StrategyArg::MatrixPow => &[Strategy::MatrixPow],
            StrategyArg::FastDoubling => &[Strategy::FastDoubling],
        };
        for st in add {
            if !chosen.contains(st) {
                chosen.push(*st);
            }
        }
    }
    let records = run_bench(k, ns, &chosen, reps).map_err(|d| Failure {
        code: EXIT_INTERNAL,
        message: d.to_string(),
    })?;
    match format {
        Format::Text => write_bench_text(out, &records)?,
        Format::Json => {
            let recs: Vec<Value> = records
                .iter()
                .map(|r| {
                    json!({
                        "strategy": r.strategy.name(),
                        "k": r.k.to_string(),
                        "n": r.n.to_string(),
                        "millis": format!("{:.3}", r.millis),
                        "mults": r.mults.to_string(),
                        "digits": r.digits.to_string(),
                    })
                })
                .collect();
            emit_json(out, &json!({ "records": recs }))?;
        }
    }
    Ok(EXIT_OK)
}

fn write_bench_text(out: &mut dyn Write, records: &[BenchRecord]) -> std::io::Result<()> {
    writeln!(
        out,
        "{:<14} {:>4} {:>10} {:>12} {:>10} {:>10}",
        "strategy", "k", "n", "millis", "mults", "digits"
    )?;
    for r in records {
        writeln!(
            out,
            "{:<14} {:>4} {:>10} {:>12.3} {:>10} {:>10}",
            r.strategy.name(),
            r.k,
            r.n,
            r.millis,
            r.mults,
            r.digits
        )?;
    }
    Ok(())
}
