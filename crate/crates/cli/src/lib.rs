//! The `argshift` command line: verification campaigns and structural
//! checks, reported as JSON (and optionally CSV).
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check
//! fails, 2 on usage or configuration errors.

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use argshift::verifier::SampleKind;
use argshift::{CartanType, Mode};
use clap::{Args, Parser, Subcommand};

mod commands;
mod report;

pub use report::{Config, Report};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "argshift", version, about = "Verify argument-shift integrable systems on classical Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Restricted-rank campaign on a regular orbit.
    Verify(VerifyArgs),
    /// Principal sl2-triple and the containment ker(ad_eta) in b+.
    Sl2(PlainArgs),
    /// Intersect regular orbits with the Slodowy slice.
    Slice(SliceArgs),
    /// Ambient rank on g_sing + C a and at random points.
    ProbeSingular(ProbeSingularArgs),
    /// Regularity of random points of xi + b+.
    ProbeSliceRegularity(SampledArgs),
    /// Exact structural identities.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Args)]
pub struct AlgebraArgs {
    /// Cartan type: A, B or C.
    #[arg(long = "type", value_parser = parse_type)]
    pub cartan_type: CartanType,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=argshift::rootdata::MAX_RANK as i64))]
    pub rank: u32,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, env = "ARGSHIFT_SEED", default_value_t = 42)]
    pub seed: u64,
    /// Rank threshold; must lie in (0, 1e-2].
    #[arg(long, default_value_t = 1e-8, value_parser = parse_tolerance)]
    pub tolerance: f64,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Also write the trials as flat CSV rows.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Worker threads (0: one per core). Does not change the report.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// Record wall time in `elapsed_ms` (otherwise null, keeping reports reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    #[arg(long, default_value = "semisimple", value_parser = parse_kind)]
    pub shift: SampleKind,
    #[arg(long, default_value = "semisimple", value_parser = parse_kind)]
    pub orbit: SampleKind,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value = "float", value_parser = parse_mode)]
    pub mode: Mode,
    /// Skip the extra trial on the orbit through a multiple of the shift.
    #[arg(long)]
    pub no_degenerate: bool,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PlainArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SampledArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SliceArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    /// Number of random target orbits.
    #[arg(long, default_value_t = 5)]
    pub orbits: usize,
    #[arg(long, default_value = "mixed", value_parser = parse_kind)]
    pub orbit: SampleKind,
    /// Target the nilpotent cone (all invariants zero) instead.
    #[arg(long)]
    pub zero: bool,
    /// Independent Newton starts per target.
    #[arg(long, default_value_t = 10)]
    pub starts: usize,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ProbeSingularArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    #[arg(long, default_value = "semisimple", value_parser = parse_kind)]
    pub shift: SampleKind,
    /// Points of g_sing + C a.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    /// Gaussian random points expected to have full rank.
    #[arg(long, default_value_t = 100)]
    pub generic: usize,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SelftestArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    /// Write the structure constants as JSON.
    #[arg(long)]
    pub dump_constants: Option<PathBuf>,
    #[command(flatten)]
    pub common: CommonArgs,
}

fn parse_type(s: &str) -> Result<CartanType, String> {
    s.parse().map_err(|_| format!("unsupported type '{s}' (expected A, B or C)"))
}

fn parse_kind(s: &str) -> Result<SampleKind, String> {
    s.parse().map_err(|_| format!("unknown kind '{s}' (expected semisimple, nilpotent or mixed)"))
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|_| format!("unknown mode '{s}' (expected exact or float)"))
}

fn parse_tolerance(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t > 0.0 && t <= 1e-2 {
        Ok(t)
    } else {
        Err(format!("tolerance {s} must lie in (0, 1e-2]"))
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

impl From<argshift::Error> for CliError {
    fn from(e: argshift::Error) -> Self {
        use argshift::Error::*;
        match e {
            Config(_) | Precondition(_) | Dimension { .. } | Index { .. } => CliError::Usage(e.to_string()),
            Domain(_) | Construction(_) | Solver(_) => CliError::Failed(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match execute(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("argshift: {e}");
            match e {
                CliError::Usage(_) => EXIT_USAGE,
                CliError::Failed(_) => EXIT_FAIL,
            }
        }
    }
}

fn common(command: &Command) -> &CommonArgs {
    match command {
        Command::Verify(a) => &a.common,
        Command::Sl2(a) => &a.common,
        Command::Slice(a) => &a.common,
        Command::ProbeSingular(a) => &a.common,
        Command::ProbeSliceRegularity(a) => &a.common,
        Command::Selftest(a) => &a.common,
    }
}

pub fn execute(command: &Command) -> Result<i32, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(common(command).threads)
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    pool.install(|| match command {
        Command::Verify(a) => commands::verify(a),
        Command::Sl2(a) => commands::sl2(a),
        Command::Slice(a) => commands::slice(a),
        Command::ProbeSingular(a) => commands::probe_singular(a),
        Command::ProbeSliceRegularity(a) => commands::probe_slice_regularity(a),
        Command::Selftest(a) => commands::selftest(a),
    })
}
