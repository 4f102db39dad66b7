//! `harmdisk`: analyze harmonic mappings of the unit disk and run the
//! verification suites over the fixture corpus.
//!
//! Exit codes: 0 all checks pass, 1 at least one check failed,
//! 2 usage or parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use harmdisk::hmap::GridSpec;

mod analyze;
mod suites;

#[derive(Parser)]
#[command(name = "harmdisk", version, about = "Harmonic mappings of the unit disk: pre-Schwarzian norms, univalence radii, distortion bounds, integral means and growth exponents")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a coefficient document or a named fixture
    Analyze(AnalyzeArgs),
    /// Run a verification suite over the fixture corpus
    Verify(VerifyArgs),
    /// Export a fixture in the JSON coefficient format
    Export(ExportArgs),
    /// List the fixture names
    Fixtures,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    s.parse().map_err(|e| format!("{e}"))
}

#[derive(Args)]
pub struct AnalyzeArgs {
    /// Path to a JSON document {"h": [[re,im],...], "g": [[re,im],...]}
    pub input: Option<PathBuf>,
    /// Analyze a named fixture instead of a file (see `harmdisk fixtures`)
    #[arg(long, conflicts_with = "input")]
    pub fixture: Option<String>,
    /// Evaluation radius; defaults to the fixture policy or the trusted
    /// radius derived from the truncation tail
    #[arg(long)]
    pub rmax: Option<f64>,
    /// Polar sampling grid as NRxNA
    #[arg(long, default_value = "64x256", value_parser = parse_grid)]
    pub grid: GridSpec,
    /// Number of phase samples for the sup-norm sweep
    #[arg(long, default_value_t = 256)]
    pub ntheta: usize,
    /// Truncation order used when building fixtures
    #[arg(long, default_value_t = harmdisk::tol::DEFAULT_ORDER)]
    pub order: usize,
    /// Accepted for interface uniformity; the analysis is deterministic
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Extremal,
    Distortion,
    Lipschitz,
    #[value(name = "chain-rule")]
    ChainRule,
    #[value(name = "qc-means")]
    QcMeans,
    Exponents,
    All,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Which suite to run
    #[arg(value_enum)]
    pub suite: SuiteName,
    /// Sample count for randomized suites (chain-rule, lipschitz)
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Seed for the randomized suites; fixed seed means byte-identical output
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct ExportArgs {
    /// Fixture name
    pub name: String,
    /// Truncation order for the generated coefficients
    #[arg(long, default_value_t = harmdisk::tol::DEFAULT_ORDER)]
    pub order: usize,
    /// Write the document here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze(args) => analyze::run(&args),
        Command::Verify(args) => suites::run(&args),
        Command::Export(args) => {
            let fixture = harmdisk::fixtures::fixture(&args.name, args.order)
                .ok_or_else(|| format!("unknown fixture {:?}", args.name))?;
            emit(&harmdisk::io::map_to_json(&fixture.map), &args.out)?;
            Ok(true)
        }
        Command::Fixtures => {
            for name in harmdisk::fixtures::names() {
                println!("{name}");
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
