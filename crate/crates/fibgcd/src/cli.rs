//! Command-line surface: one thin binary dispatching to the library.
//!
//! Seven subcommands: `z`, `ell`, `classify`, `density`, `scan`, `count`,
//! `verify`. Flags beat environment variables beat defaults, and a given
//! [`RunConfig`] always renders byte-identical machine-readable output, so
//! runs can be diffed. Densities are rounded to 12 significant digits before
//! formatting; timing goes to stderr, never into reports.
//!
//! Exit codes: 0 success, 1 usage error or failed verification, 2 violated
//! precondition, 3 capacity or overflow.

use std::fmt::Write as _;

use crate::density::DensityMode;
use crate::verify::CheckOutcome;
use crate::{classify, density, rank, scan, verify, Error, Result};

pub mod report;

/// Environment variable prefix for flag defaults.
const ENV_PREFIX: &str = "FIBGCD_";

const USAGE: &str = "\
usage: fibgcd <command> [options]

commands:
  z <m>            rank of apparition of m: smallest n with m | F(n)
  ell <m>          lcm(m, z(m)), the divisibility period of m in gcd(n, F(n))
  classify <k>     verdict for the class of k: Unattained, Degenerate,
                   or PositiveDensity (with witness prime when degenerate)
  density <k>      truncated density series for the class of k
  scan             histogram gcd(p-1, F(p-1)) over all primes p <= limit
  count            counting functions: attained k and positive-density k
  verify           run the built-in invariant suite (exit 0 iff all pass)

options:
  --format <text|json|csv>  output format          [text]    FIBGCD_FORMAT
  --terms <n>               series truncation      [10000]   FIBGCD_TERMS
  --limit <n>               scan/count bound       required  FIBGCD_LIMIT
  --chunk <n>               scan chunk width       [65536]   FIBGCD_CHUNK
  --threads <n>             workers, 0 = all cores [0]       FIBGCD_THREADS
  --series <exact|support|recombined>
                            density variant        [exact]   FIBGCD_SERIES

Flags override environment variables; environment variables override
defaults.";

/// The subcommand to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Z { m: u64 },
    Ell { m: u64 },
    Classify { k: u64 },
    Density { k: u64 },
    Scan,
    Count,
    Verify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

/// Density series variant selected by `--series`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Exact,
    Support,
    /// Exact class rebuilt from support-class series over divisors of k.
    Recombined,
}

/// Fully resolved invocation. Identical configs produce byte-identical
/// machine-readable output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub format: OutputFormat,
    pub terms: u64,
    pub limit: Option<u64>,
    pub chunk: u64,
    pub threads: usize,
    pub series: SeriesKind,
}

/// Rendered run: what to print and which code to exit with.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub stdout: String,
    pub exit_code: i32,
}

/// Usage-level failure: malformed flags or arguments. Exit code 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UsageError(pub String);

/// Parse argv (without the program name), consulting `env` for defaults.
pub fn parse_args(
    args: &[String],
    env: &dyn Fn(&str) -> Option<String>,
) -> std::result::Result<RunConfig, UsageError> {
    let mut terms: u64 = 10_000;
    let mut format = OutputFormat::Text;
    let mut limit: Option<u64> = None;
    let mut chunk: u64 = 1 << 16;
    let mut threads: usize = 0;
    let mut series = SeriesKind::Exact;

    let lookup = |name: &str| env(&format!("{ENV_PREFIX}{name}"));
    if let Some(v) = lookup("TERMS") {
        terms = parse_number(&v, "FIBGCD_TERMS")?;
    }
    if let Some(v) = lookup("FORMAT") {
        format = parse_format(&v)?;
    }
    if let Some(v) = lookup("LIMIT") {
        limit = Some(parse_number(&v, "FIBGCD_LIMIT")?);
    }
    if let Some(v) = lookup("CHUNK") {
        chunk = parse_number(&v, "FIBGCD_CHUNK")?;
    }
    if let Some(v) = lookup("THREADS") {
        threads = parse_number(&v, "FIBGCD_THREADS")? as usize;
    }
    if let Some(v) = lookup("SERIES") {
        series = parse_series(&v)?;
    }

    let mut positional: Vec<u64> = Vec::new();
    let mut command_name: Option<String> = None;
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        if let Some(flag) = arg.strip_prefix("--") {
            let (name, value) = match flag.split_once('=') {
                Some((n, v)) => (n.to_string(), v.to_string()),
                None => {
                    let v = it
                        .next()
                        .ok_or_else(|| UsageError(format!("flag --{flag} needs a value")))?;
                    (flag.to_string(), v.clone())
                }
            };
            match name.as_str() {
                "terms" => terms = parse_number(&value, "--terms")?,
                "format" => format = parse_format(&value)?,
                "limit" => limit = Some(parse_number(&value, "--limit")?),
                "chunk" => chunk = parse_number(&value, "--chunk")?,
                "threads" => threads = parse_number(&value, "--threads")? as usize,
                "series" => series = parse_series(&value)?,
                other => return Err(UsageError(format!("unknown flag --{other}"))),
            }
        } else if command_name.is_none() {
            command_name = Some(arg.clone());
        } else {
            positional.push(
                arg.parse::<u64>()
                    .map_err(|_| UsageError(format!("expected a positive integer, got {arg:?}")))?,
            );
        }
    }

    let name = command_name.ok_or_else(|| UsageError("no command given".into()))?;
    let take_arg = |what: &str| -> std::result::Result<u64, UsageError> {
        match positional.as_slice() {
            [v] => Ok(*v),
            [] => Err(UsageError(format!("{name} requires {what}"))),
            _ => Err(UsageError(format!("{name} takes exactly one argument"))),
        }
    };
    let no_args = || -> std::result::Result<(), UsageError> {
        if positional.is_empty() {
            Ok(())
        } else {
            Err(UsageError(format!("{name} takes no positional arguments")))
        }
    };

    let command = match name.as_str() {
        "z" => Command::Z { m: take_arg("m")? },
        "ell" => Command::Ell { m: take_arg("m")? },
        "classify" => Command::Classify { k: take_arg("k")? },
        "density" => Command::Density { k: take_arg("k")? },
        "scan" => {
            no_args()?;
            Command::Scan
        }
        "count" => {
            no_args()?;
            Command::Count
        }
        "verify" => {
            no_args()?;
            Command::Verify
        }
        other => return Err(UsageError(format!("unknown command {other:?}"))),
    };

    Ok(RunConfig {
        command,
        format,
        terms,
        limit,
        chunk,
        threads,
        series,
    })
}

fn parse_number(value: &str, what: &str) -> std::result::Result<u64, UsageError> {
    value
        .parse::<u64>()
        .map_err(|_| UsageError(format!("{what} expects a nonnegative integer, got {value:?}")))
}

fn parse_format(value: &str) -> std::result::Result<OutputFormat, UsageError> {
    match value {
        "text" => Ok(OutputFormat::Text),
        "json" => Ok(OutputFormat::Json),
        "csv" => Ok(OutputFormat::Csv),
        other => Err(UsageError(format!("unknown format {other:?}"))),
    }
}

fn parse_series(value: &str) -> std::result::Result<SeriesKind, UsageError> {
    match value {
        "exact" => Ok(SeriesKind::Exact),
        "support" => Ok(SeriesKind::Support),
        "recombined" => Ok(SeriesKind::Recombined),
        other => Err(UsageError(format!("unknown series kind {other:?}"))),
    }
}

/// Round to 12 significant decimal digits; report values pass through this
/// before formatting.
pub fn round_density(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(11 - magnitude);
    (x * scale).round() / scale
}

fn fmt_density(x: f64) -> String {
    format!("{:?}", round_density(x))
}

/// Execute a resolved config and render its report.
pub fn run(config: &RunConfig) -> Result<RunOutput> {
    match config.threads {
        0 => dispatch(config),
        n => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Defect(format!("thread pool: {e}")))?
            .install(|| dispatch(config)),
    }
}

fn dispatch(config: &RunConfig) -> Result<RunOutput> {
    let out = match config.command {
        Command::Z { m } => render_record(rank::record(m)?, config.format, false),
        Command::Ell { m } => render_record(rank::record(m)?, config.format, true),
        Command::Classify { k } => render_classification(classify::classify(k)?, config.format),
        Command::Density { k } => {
            let (estimate, value) = match config.series {
                SeriesKind::Exact => {
                    let e = density::density_exact(k, config.terms)?;
                    let v = e.value;
                    (Some(e), v)
                }
                SeriesKind::Support => {
                    let e = density::density_support(k, config.terms)?;
                    let v = e.value;
                    (Some(e), v)
                }
                SeriesKind::Recombined => (None, density::exact_from_support(k, config.terms)?),
            };
            render_density(k, config, estimate, value)
        }
        Command::Scan => {
            let limit = require_limit(config)?;
            let report = scan::scan_primes(limit, config.chunk)?;
            eprintln!(
                "scanned {} primes up to {} in {} ms ({} chunks)",
                report.prime_count, report.x, report.elapsed_ms, report.chunk_count
            );
            render_scan(&report, config.format)
        }
        Command::Count => {
            let limit = require_limit(config)?;
            let attained = scan::count_attained(limit)?;
            let positive = scan::count_positive_density(limit)?;
            render_count(limit, attained, positive, config.format)
        }
        Command::Verify => {
            let outcomes = verify::run_all();
            return Ok(render_verify(&outcomes, config.format));
        }
    };
    Ok(RunOutput {
        stdout: out,
        exit_code: 0,
    })
}

fn require_limit(config: &RunConfig) -> Result<u64> {
    config
        .limit
        .ok_or_else(|| Error::precondition("this command requires --limit"))
}

fn render_record(rec: rank::EntryPointRecord, format: OutputFormat, want_ell: bool) -> String {
    match format {
        OutputFormat::Text => {
            if want_ell {
                format!("{}\n", rec.ell)
            } else {
                format!("{}\n", rec.z)
            }
        }
        OutputFormat::Json => {
            let wire = report::EntryReport::from(rec);
            format!("{}\n", serde_json::to_string(&wire).expect("serialize"))
        }
        OutputFormat::Csv => {
            let method = serde_token(&rec.method);
            format!("m,z,ell,method\n{},{},{},{}\n", rec.m, rec.z, rec.ell, method)
        }
    }
}

fn render_classification(c: classify::Classification, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let mut line = format!("k={} verdict={:?}", c.k, c.verdict);
            if let Some(w) = c.witness {
                let _ = write!(line, " witness={w}");
            }
            let ell = rank::entry_lcm(c.k).expect("ell of classified k");
            let _ = write!(line, " ell={ell} gcd_attained={}", c.gcd_attained);
            line.push('\n');
            line
        }
        OutputFormat::Json => {
            let wire = report::ClassifyReport::from(c);
            format!("{}\n", serde_json::to_string(&wire).expect("serialize"))
        }
        OutputFormat::Csv => {
            let witness = c.witness.map(|w| w.to_string()).unwrap_or_default();
            let ell = rank::entry_lcm(c.k).expect("ell of classified k");
            format!(
                "k,verdict,witness,ell,gcd_attained\n{},{:?},{},{},{}\n",
                c.k, c.verdict, witness, ell, c.gcd_attained
            )
        }
    }
}

fn render_density(
    k: u64,
    config: &RunConfig,
    estimate: Option<density::DensityEstimate>,
    value: f64,
) -> String {
    match config.format {
        OutputFormat::Text => format!("{}\n", fmt_density(value)),
        OutputFormat::Json => {
            let wire = report::DensityReport::new(k, config, estimate.as_ref(), value);
            format!("{}\n", serde_json::to_string(&wire).expect("serialize"))
        }
        OutputFormat::Csv => {
            let series = series_token(config.series, estimate.as_ref());
            let tail = estimate
                .as_ref()
                .map(|e| fmt_density(e.tail_estimate))
                .unwrap_or_default();
            format!(
                "k,series,terms,value,tail_estimate\n{},{},{},{},{}\n",
                k,
                series,
                config.terms,
                fmt_density(value),
                tail
            )
        }
    }
}

pub(crate) fn series_token(kind: SeriesKind, estimate: Option<&density::DensityEstimate>) -> String {
    match (kind, estimate) {
        (SeriesKind::Recombined, _) => "recombined-exact-class".into(),
        (_, Some(e)) => serde_token(&e.mode),
        (SeriesKind::Exact, None) => serde_token(&DensityMode::ExactClass),
        (SeriesKind::Support, None) => serde_token(&DensityMode::SupportClass),
    }
}

/// The serde rename of a unit enum variant, reused for text/CSV tokens.
fn serde_token<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_value(value)
        .expect("serialize token")
        .as_str()
        .expect("string token")
        .to_string()
}

fn render_scan(rep: &scan::ScanReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = format!(
                "x={} primes={} classes={} chunks={}\n",
                rep.x,
                rep.prime_count,
                rep.histogram.len(),
                rep.chunk_count
            );
            for (k, count) in &rep.histogram {
                let _ = writeln!(
                    out,
                    "{k}\t{count}\t{}",
                    fmt_density(*count as f64 / rep.prime_count as f64)
                );
            }
            out
        }
        OutputFormat::Json => {
            let wire = report::HistogramReport::from(rep);
            format!("{}\n", serde_json::to_string(&wire).expect("serialize"))
        }
        OutputFormat::Csv => {
            let mut out = String::from("k,count,frequency\n");
            for (k, count) in &rep.histogram {
                let _ = writeln!(
                    out,
                    "{k},{count},{}",
                    fmt_density(*count as f64 / rep.prime_count as f64)
                );
            }
            out
        }
    }
}

fn render_count(x: u64, attained: u64, positive: u64, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            format!("x={x} attained={attained} positive_density={positive}\n")
        }
        OutputFormat::Json => {
            let wire = report::CountReport::new(x, attained, positive);
            format!("{}\n", serde_json::to_string(&wire).expect("serialize"))
        }
        OutputFormat::Csv => {
            format!("x,attained,positive_density\n{x},{attained},{positive}\n")
        }
    }
}

fn render_verify(outcomes: &[CheckOutcome], format: OutputFormat) -> RunOutput {
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let passed = outcomes.len() - failed;
    let stdout = match format {
        OutputFormat::Json => {
            let wire = report::VerifyReport::new(outcomes);
            format!("{}\n", serde_json::to_string(&wire).expect("serialize"))
        }
        _ => {
            let mut out = String::new();
            for o in outcomes {
                let _ = writeln!(
                    out,
                    "{} {}/{} ({} ms): {}",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.group,
                    o.name,
                    o.elapsed_ms,
                    o.detail
                );
            }
            let _ = writeln!(out, "passed {passed} failed {failed}");
            out
        }
    };
    RunOutput {
        stdout,
        exit_code: if failed == 0 { 0 } else { 1 },
    }
}

/// Entry point for the binary: parse, run, print, and map errors to exit
/// codes.
pub fn main_with_args(args: &[String]) -> i32 {
    let config = match parse_args(args, &|name| std::env::var(name).ok()) {
        Ok(c) => c,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}\n\n{USAGE}");
            return 1;
        }
    };
    match run(&config) {
        Ok(out) => {
            print!("{}", out.stdout);
            out.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
