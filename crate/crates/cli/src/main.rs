//! `treealpha` command-line front end.
//!
//! Exit codes: 0 success, 2 verification failure, 3 guard exceeded, 4 bad
//! input (including unreadable files and malformed arguments).

mod bench;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "treealpha",
    version,
    about = "Layered tree decompositions, covers and packing PTASes for geometric intersection graphs"
)]
pub struct Cli {
    #[command(flatten)]
    pub guards: Guards,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Guards {
    /// Largest instance accepted.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub max_n: usize,
    /// DP state cap per node; overrides TREEALPHA_MAX_STATES.
    #[arg(long, global = true)]
    pub max_states: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a seeded instance.
    Generate(GenerateArgs),
    /// Build a layered tree decomposition and verify its bound.
    Decompose(DecomposeArgs),
    /// Build a general cover.
    Cover(CoverArgs),
    /// Solve exactly.
    Solve(SolveArgs),
    /// Run an approximation scheme.
    Ptas(PtasArgs),
    /// Re-check an artifact against its instance.
    Verify(VerifyArgs),
    /// Seeded sweeps reporting ratios and times.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long)]
    pub kind: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
    /// Horizontal-part bound for grid paths.
    #[arg(long = "l")]
    pub ell: Option<u32>,
    #[arg(long)]
    pub bends: Option<u32>,
    /// Diameter ratio (similar disks) or radius spread (disks).
    #[arg(long)]
    pub ratio: Option<f64>,
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub width: Option<f64>,
    #[arg(long)]
    pub window: Option<f64>,
    /// Attach random integer weights in 1..=9.
    #[arg(long)]
    pub weighted: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecomposeMethod {
    Auto,
    UnitDisks,
    UnitRects,
    GridPaths,
    FatSimilar,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value_t = DecomposeMethod::Auto)]
    pub method: DecomposeMethod,
    /// Similarity ratio for fat-similar.
    #[arg(long)]
    pub k: Option<f64>,
    /// Fatness constant for fat-similar.
    #[arg(long)]
    pub cfat: Option<u64>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverMethod {
    Fat,
    Layering,
}

#[derive(Args, Debug)]
pub struct CoverArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, value_enum)]
    pub method: CoverMethod,
    #[arg(long, default_value_t = 2)]
    pub r: u32,
    #[arg(long)]
    pub cfat: Option<u64>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Problem {
    Mwis,
    InducedMatching,
    Dissociation,
    /// Copies of the pattern given by --pattern.
    FPacking,
    /// Distance-d packing of single vertices.
    Distance,
}

#[derive(Args, Debug, Clone)]
pub struct ProblemArgs {
    #[arg(long, value_enum, default_value_t = Problem::Mwis)]
    pub problem: Problem,
    /// Explicit family file; overrides --problem's family.
    #[arg(long)]
    pub family: Option<PathBuf>,
    /// Pattern graph (JSON) for f-packing.
    #[arg(long)]
    pub pattern: Option<PathBuf>,
    /// Packing distance; above 2 every problem becomes a distance-d packing of its family.
    #[arg(long, default_value_t = 2)]
    pub d: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMethod {
    Dp,
    Brute,
    Subexp,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, value_enum, default_value_t = SolveMethod::Dp)]
    pub method: SolveMethod,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PtasMethod {
    FatCover,
    CoverPacking,
    Distance,
    Shifting,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug)]
pub struct PtasArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, value_enum)]
    pub method: PtasMethod,
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long)]
    pub r: Option<u32>,
    /// Accuracy for shifting, as a decimal or fraction.
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long)]
    pub cfat: Option<u64>,
    /// Also compute the exact optimum and the achieved ratio.
    #[arg(long)]
    pub exact: bool,
    /// Solution output.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Report output.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub solution: Option<PathBuf>,
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long)]
    pub decomposition: Option<PathBuf>,
    #[arg(long)]
    pub cover: Option<PathBuf>,
    #[arg(long)]
    pub td: Option<PathBuf>,
    #[arg(long)]
    pub layering: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Ratio,
    Properties,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Suite::Ratio)]
    pub suite: Suite,
    /// Seeds per (method, parameter) cell.
    #[arg(long, default_value_t = 5)]
    pub seeds: u64,
    /// Property filter for the properties suite.
    #[arg(long, default_value = "")]
    pub filter: String,
    /// CSV (ratio) or JUnit XML (properties) output; stdout when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Error carrying the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub const VERIFICATION: u8 = 2;
    pub const GUARD: u8 = 3;
    pub const INPUT: u8 = 4;

    pub fn verification(message: impl Into<String>) -> Self {
        Failure {
            code: Self::VERIFICATION,
            message: message.into(),
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: Self::INPUT,
            message: message.into(),
        }
    }

    pub fn guard(message: impl Into<String>) -> Self {
        Failure {
            code: Self::GUARD,
            message: message.into(),
        }
    }
}

impl From<treealpha::Error> for Failure {
    fn from(e: treealpha::Error) -> Self {
        let code = if e.is_guard() {
            Self::GUARD
        } else if e.is_verification() {
            Self::VERIFICATION
        } else {
            Self::INPUT
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { Failure::INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
