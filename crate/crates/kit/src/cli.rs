use std::ffi::OsString;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands;
use crate::config::FileConfig;
use crate::error::KitError;
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "daehee-kit", version, about = "Exact higher-order Daehee, Bernoulli and Stirling numbers")]
pub struct Cli {
    /// TOML file supplying defaults for flags not given on the command line.
    #[arg(long, global = true, env = "DAEHEE_CONFIG")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate a number sequence.
    Table(TableArgs),
    /// Print one polynomial as ascending coefficients.
    Poly(PolyArgs),
    /// Run the identity suite.
    Verify(VerifyArgs),
    /// Partial sums of the invariant p-adic integral and their error valuations.
    Volkenborn(VolkenbornArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FormatArg {
    #[arg(long, value_enum, env = "DAEHEE_FORMAT")]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableSequence {
    Daehee1,
    Daehee2,
    Bernoulli,
    Stirling1,
    Stirling2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    /// `S1(n+k,k)/C(n+k,k)` (first kind only).
    Closed,
    /// Coefficients of the generating function.
    Gf,
    /// Stirling numbers of the first kind against Bernoulli numbers.
    StirlingBernoulli,
    /// Iterated binomial convolution of order-1 numbers (first kind only).
    Convolution,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub sequence: TableSequence,
    /// Largest index tabulated [default: 10].
    #[arg(long, env = "DAEHEE_N_MAX")]
    pub n_max: Option<usize>,
    /// Daehee order, or Bernoulli order alpha.
    #[arg(long, env = "DAEHEE_K")]
    pub k: Option<usize>,
    /// Which computation produces the values (Daehee sequences only).
    #[arg(long, value_enum)]
    pub route: Option<Route>,
    #[command(flatten)]
    pub format: FormatArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolySequence {
    Daehee1,
    Daehee2,
    Bernoulli,
}

#[derive(Debug, Clone, Args)]
pub struct PolyArgs {
    #[arg(value_enum)]
    pub sequence: PolySequence,
    /// Polynomial index.
    #[arg(long)]
    pub n: usize,
    /// Daehee order, or Bernoulli order alpha [default: 1].
    #[arg(long, env = "DAEHEE_K")]
    pub k: Option<usize>,
    #[command(flatten)]
    pub format: FormatArg,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// `all` or a comma-separated list such as `T1,T12,E36`.
    #[arg(long, env = "DAEHEE_IDS")]
    pub ids: Option<String>,
    /// Largest n on the grid [default: 20].
    #[arg(long, env = "DAEHEE_N_MAX")]
    pub n_max: Option<usize>,
    /// Largest order k on the grid [default: 6].
    #[arg(long, env = "DAEHEE_K_MAX")]
    pub k_max: Option<usize>,
    /// Comma-separated rationals, e.g. `0,1,-1,1/2`.
    #[arg(long, env = "DAEHEE_X_SAMPLES", value_delimiter = ',', allow_hyphen_values = true)]
    pub x_samples: Option<Vec<String>>,
    /// Worker threads; defaults to one per core.
    #[arg(long, env = "DAEHEE_JOBS")]
    pub jobs: Option<usize>,
    /// Include per-identity wall time (makes output nondeterministic).
    #[arg(long)]
    pub timings: bool,
    #[command(flatten)]
    pub format: FormatArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IntegrandKind {
    /// `(x_1+...+x_k + x)_n`
    First,
    /// `(x_1+...+x_k - x)^(n)`
    Second,
}

#[derive(Debug, Clone, Args)]
pub struct VolkenbornArgs {
    /// Degree of the integrand.
    #[arg(long)]
    pub n: usize,
    /// Number of integration variables [default: 1].
    #[arg(long, env = "DAEHEE_K")]
    pub k: Option<usize>,
    /// Prime modulus.
    #[arg(long)]
    pub p: u64,
    /// Inclusive depth range `a..b`.
    #[arg(long, value_parser = parse_depths)]
    pub depths: RangeInclusive<u32>,
    #[arg(long, value_enum, default_value = "first")]
    pub kind: IntegrandKind,
    /// Shift `x` in the integrand.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Use Faulhaber power sums when the literal sum exceeds the budget.
    #[arg(long)]
    pub closed_form: bool,
    /// Maximum number of integrand evaluations in a literal partial sum.
    #[arg(long, env = "DAEHEE_BUDGET")]
    pub budget: Option<u64>,
    #[command(flatten)]
    pub format: FormatArg,
}

fn parse_depths(s: &str) -> Result<RangeInclusive<u32>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a range like 1..3, got `{s}`"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let lo: u32 = a.trim().parse().map_err(|e| format!("bad depth `{a}`: {e}"))?;
    let hi: u32 = b.trim().parse().map_err(|e| format!("bad depth `{b}`: {e}"))?;
    if lo > hi {
        return Err(format!("empty depth range {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

/// Exit status plus captured streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// 0 success, 1 verification failure, 2 usage or input error.
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    match dispatch(cli) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(cli: Cli) -> Result<(i32, String), KitError> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    match cli.command {
        Command::Table(args) => commands::table(&args, &file),
        Command::Poly(args) => commands::poly(&args, &file),
        Command::Verify(args) => commands::verify(&args, &file),
        Command::Volkenborn(args) => commands::volkenborn(&args, &file),
    }
}
