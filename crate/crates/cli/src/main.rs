//! `vypoly`: generate, verify and study higher Vorob'ev–Yablonski polynomials.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const PRECISION_ENV: &str = "VYPOLY_PRECISION";

#[derive(Parser, Debug)]
#[command(name = "vypoly", version, about)]
pub struct Cli {
    /// Working precision in bits (at least 128); defaults depend on the command.
    #[arg(long, global = true, env = PRECISION_ENV)]
    pub precision: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build Q_n^[N] by the Schur, recurrence and Hankel routes and write it as JSON.
    Gen(GenArgs),
    /// Run an exact identity suite for every case up to --n.
    Verify(VerifyArgs),
    /// Write the scaled root set of Q_n^[N] as CSV.
    Roots(RootsArgs),
    /// Trace the zero locus of Re phi at the saddles and write its arcs.
    Locus(LocusArgs),
    /// Print the 2N+1 star corners.
    Corners(CornersArgs),
    /// Overlay a root set and a locus in one SVG figure.
    Render(RenderArgs),
}

#[derive(Args, Debug, Clone)]
pub struct TimeArgs {
    #[arg(long = "N", default_value_t = 1)]
    pub n_cap: usize,
    /// Odd time as `J=VALUE` with VALUE an exact rational such as `-1/3` or `1/2+2i`.
    #[arg(long = "time", value_name = "J=VALUE")]
    pub times: Vec<String>,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub times: TimeArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Fesq,
    Freak,
    Miura,
    Dodgson,
    Hirota,
    Pii,
    Lenard,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Largest case index.
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub times: TimeArgs,
    /// Seed for the random scalar times of the dodgson and hirota suites.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct RootsArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long = "N", default_value_t = 1)]
    pub n_cap: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Args, Debug)]
pub struct LocusArgs {
    #[arg(long = "N", default_value_t = 2)]
    pub n_cap: usize,
    /// Sample points per side of the grid.
    #[arg(long, default_value_t = 400)]
    pub grid: usize,
    #[arg(long)]
    pub half_width: Option<f64>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CornersArgs {
    #[arg(long = "N")]
    pub n_cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    /// Root set CSV written by `roots`.
    #[arg(long)]
    pub roots: Option<PathBuf>,
    /// Locus CSV written by `locus`.
    #[arg(long)]
    pub locus: Option<PathBuf>,
    #[arg(long)]
    pub half_width: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { commands::Failure::CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
