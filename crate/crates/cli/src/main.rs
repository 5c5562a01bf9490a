//! `scx`: exact state-complexity constructions and verification sweeps.
//!
//! Exit codes: 0 = all checks passed, 1 = a verification or equivalence
//! check failed (or a construction hit the state limit), 2 = usage or
//! input error.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use scx_core::{
    binary_witness, equivalent, minimize, power_construction, square_construction,
    unary_cycle_witness, verify_square, verify_unary, Dfa, Error as CoreError, VerificationReport,
    DEFAULT_STATE_LIMIT,
};

/// Inclusive integer range `a..b`; a bare `a` means `a..a`.
#[derive(Clone, Copy, Debug)]
struct Range {
    lo: usize,
    hi: usize,
}

impl Range {
    fn values(self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("invalid range bound `{t}`"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range `{s}`"));
        }
        Ok(Range { lo, hi })
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    /// Two-letter family whose square needs n·2ⁿ − 2ⁿ⁻¹ states
    Binary,
    /// One-letter cycle whose k-th power needs kn − k + 1 states
    Unary,
}

#[derive(Parser)]
#[command(
    name = "scx",
    version,
    about = "Exact state complexity of concatenations and powers of regular languages"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check n·2ⁿ − 2ⁿ⁻¹ for the square of the binary witness over a range of n
    VerifySquare(VerifySquareArgs),
    /// Check kn − k + 1 for powers of the unary witness over ranges of n and k
    VerifyUnary(VerifyUnaryArgs),
    /// Read a DFA file and write the minimized k-th power
    Power(PowerArgs),
    /// Read a DFA file and write its raw square construction
    Square(SquareArgs),
    /// Write a witness DFA file
    Witness(WitnessArgs),
    /// Minimize a DFA file
    Min(MinArgs),
    /// Compare two DFA files for language equality
    Equiv(EquivArgs),
    /// List accepted words up to a length bound
    Enum(EnumArgs),
}

#[derive(Args)]
struct VerifySquareArgs {
    /// Range of witness sizes, e.g. 3..10
    #[arg(long)]
    n: Range,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Compute the cells on worker threads (output order is unchanged)
    #[arg(long)]
    parallel: bool,
    /// Shift applied to every expected size; failure-injection hook for tests
    #[arg(long, hide = true, default_value_t = 0, allow_negative_numbers = true)]
    expected_offset: i64,
}

#[derive(Args)]
struct VerifyUnaryArgs {
    /// Range of witness sizes, e.g. 2..30
    #[arg(long)]
    n: Range,
    /// Range of power exponents, e.g. 2..5
    #[arg(long)]
    k: Range,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Compute the cells on worker threads (output order is unchanged)
    #[arg(long)]
    parallel: bool,
    /// Shift applied to every expected size; failure-injection hook for tests
    #[arg(long, hide = true, default_value_t = 0, allow_negative_numbers = true)]
    expected_offset: i64,
}

#[derive(Args)]
struct PowerArgs {
    /// Input DFA file (JSON)
    #[arg(long = "in")]
    input: PathBuf,
    /// Power exponent (k = 1 writes the minimized input)
    #[arg(long)]
    k: usize,
    /// Output file; stdout if omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Abort once a construction would exceed this many states
    #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
    state_limit: usize,
}

#[derive(Args)]
struct SquareArgs {
    /// Input DFA file (JSON)
    #[arg(long = "in")]
    input: PathBuf,
    /// Output file; stdout if omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Abort once the construction would exceed this many states
    #[arg(long, default_value_t = DEFAULT_STATE_LIMIT)]
    state_limit: usize,
}

#[derive(Args)]
struct WitnessArgs {
    /// Which family to emit
    #[arg(value_enum)]
    family: FamilyArg,
    /// Witness size (binary needs n ≥ 3, unary n ≥ 2)
    #[arg(long)]
    n: usize,
    /// Output file; stdout if omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MinArgs {
    /// Input DFA file (JSON)
    #[arg(long = "in")]
    input: PathBuf,
    /// Output file; stdout if omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EquivArgs {
    /// First DFA file
    a: PathBuf,
    /// Second DFA file
    b: PathBuf,
}

#[derive(Args)]
struct EnumArgs {
    /// Input DFA file (JSON)
    #[arg(long = "in")]
    input: PathBuf,
    /// Maximum word length to list
    #[arg(long, default_value_t = 8)]
    max_len: usize,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::VerifySquare(args) => cmd_verify_square(args),
        Command::VerifyUnary(args) => cmd_verify_unary(args),
        Command::Power(args) => cmd_power(args),
        Command::Square(args) => cmd_square(args),
        Command::Witness(args) => cmd_witness(args),
        Command::Min(args) => cmd_min(args),
        Command::Equiv(args) => cmd_equiv(args),
        Command::Enum(args) => cmd_enum(args),
    }
}

fn read_dfa(path: &Path) -> Result<Dfa, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Dfa::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_text(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => {
            fs::write(path, format!("{text}\n")).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// Applies the hidden failure-injection offset and recomputes `pass`.
fn apply_offset(reports: &mut [VerificationReport], offset: i64) {
    if offset == 0 {
        return;
    }
    for r in reports {
        r.expected_states = (r.expected_states as i64).saturating_add(offset).max(0) as usize;
        r.pass = r.minimal_states == r.expected_states;
    }
}

fn emit_reports(reports: &[VerificationReport], format: Format) {
    match format {
        Format::Csv => {
            println!("{}", VerificationReport::csv_header());
            for r in reports {
                println!("{}", r.csv_row());
            }
        }
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(reports).expect("report serialization cannot fail")
            );
        }
        Format::Table => {
            println!(
                "{:<14}{:>4}{:>4}{:>10}{:>10}{:>10}  {:<6}{:>8}",
                "family", "n", "k", "raw", "minimal", "expected", "pass", "ms"
            );
            for r in reports {
                println!(
                    "{:<14}{:>4}{:>4}{:>10}{:>10}{:>10}  {:<6}{:>8}",
                    r.family.name(),
                    r.n,
                    r.k,
                    r.raw_states,
                    r.minimal_states,
                    r.expected_states,
                    if r.pass { "pass" } else { "FAIL" },
                    r.elapsed.as_millis()
                );
            }
        }
    }
}

fn sweep<C, F>(cells: Vec<C>, parallel: bool, f: F) -> Result<Vec<VerificationReport>, String>
where
    C: Copy + Send + Sync,
    F: Fn(C) -> Result<VerificationReport, CoreError> + Send + Sync,
{
    let collected: Result<Vec<_>, CoreError> = if parallel {
        cells.par_iter().map(|&c| f(c)).collect()
    } else {
        cells.iter().map(|&c| f(c)).collect()
    };
    collected.map_err(|e| e.to_string())
}

fn cmd_verify_square(args: VerifySquareArgs) -> Result<u8, String> {
    if args.n.lo < 3 {
        return Err("n must be ≥ 3".into());
    }
    let mut reports = sweep(args.n.values().collect(), args.parallel, verify_square)?;
    apply_offset(&mut reports, args.expected_offset);
    emit_reports(&reports, args.format);
    Ok(if reports.iter().all(|r| r.pass) { 0 } else { 1 })
}

fn cmd_verify_unary(args: VerifyUnaryArgs) -> Result<u8, String> {
    if args.n.lo < 2 {
        return Err("n must be ≥ 2".into());
    }
    if args.k.lo < 2 {
        return Err("k must be ≥ 2".into());
    }
    let cells: Vec<(usize, usize)> = args
        .n
        .values()
        .flat_map(|n| args.k.values().map(move |k| (n, k)))
        .collect();
    let mut reports = sweep(cells, args.parallel, |(n, k)| verify_unary(n, k))?;
    apply_offset(&mut reports, args.expected_offset);
    emit_reports(&reports, args.format);
    Ok(if reports.iter().all(|r| r.pass) { 0 } else { 1 })
}

fn cmd_power(args: PowerArgs) -> Result<u8, String> {
    let d = read_dfa(&args.input)?;
    match power_construction(&d, args.k, args.state_limit) {
        Ok(p) => {
            let m = minimize(&p);
            write_text(&m.to_json(), args.out.as_deref())?;
            eprintln!("{} states", m.num_states);
            Ok(0)
        }
        Err(e @ CoreError::StateLimitExceeded { .. }) => {
            eprintln!("error: {e}");
            Ok(1)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_square(args: SquareArgs) -> Result<u8, String> {
    let d = read_dfa(&args.input)?;
    match square_construction(&d, args.state_limit) {
        Ok(sq) => {
            write_text(&sq.to_json(), args.out.as_deref())?;
            eprintln!("{} states", sq.dfa.num_states);
            Ok(0)
        }
        Err(e @ CoreError::StateLimitExceeded { .. }) => {
            eprintln!("error: {e}");
            Ok(1)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_witness(args: WitnessArgs) -> Result<u8, String> {
    let d = match args.family {
        FamilyArg::Binary => binary_witness(args.n),
        FamilyArg::Unary => unary_cycle_witness(args.n),
    }
    .map_err(|e| e.to_string())?;
    write_text(&d.to_json(), args.out.as_deref())?;
    Ok(0)
}

fn cmd_min(args: MinArgs) -> Result<u8, String> {
    let d = read_dfa(&args.input)?;
    let m = minimize(&d);
    write_text(&m.to_json(), args.out.as_deref())?;
    eprintln!("{} states", m.num_states);
    Ok(0)
}

fn cmd_equiv(args: EquivArgs) -> Result<u8, String> {
    let a = read_dfa(&args.a)?;
    let b = read_dfa(&args.b)?;
    if equivalent(&a, &b).map_err(|e| e.to_string())? {
        println!("equivalent");
        Ok(0)
    } else {
        println!("different");
        Ok(1)
    }
}

fn cmd_enum(args: EnumArgs) -> Result<u8, String> {
    let d = read_dfa(&args.input)?;
    for word in d.enumerate_language(args.max_len) {
        println!("{}", d.format_word(&word));
    }
    Ok(0)
}
