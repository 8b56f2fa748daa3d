//! `spectra`: command-line front end for the exact realization toolkit.
//!
//! Exit codes: 0 on success, 1 on usage or domain errors, 2 when a
//! certificate fails.

mod commands;
mod demo;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spectra_core::rowsum::Mode;

#[derive(Parser, Debug)]
#[command(
    name = "spectra",
    version,
    about = "Nonnegative realizations with certified spectra and Jordan structure"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Similarity to a nonnegative matrix with constant row sums.
    Normalize(NormalizeArgs),
    /// Raise the Perron root by eps keeping the other Jordan blocks.
    GuoShift(GuoShiftArgs),
    /// Glue two matrices through a shared eigenvalue.
    Bond(BondArgs),
    /// Diagonalizable realization of a trace-zero list of length five.
    Realize5(Realize5Args),
    /// Grid sweep of the realizability region of a family.
    Region(RegionArgs),
    /// Certify a matrix against a spectrum and optional Jordan structure.
    Verify(VerifyArgs),
    /// All Jordan structures a spectrum allows.
    JordanForms(JordanFormsArgs),
    /// Scripted demonstrations with a markdown report.
    Demo(DemoArgs),
}

#[derive(Args, Debug)]
pub struct NormalizeArgs {
    /// Input matrix JSON.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, env = "SPECTRA_MODE", default_value = "exact")]
    pub mode: Mode,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GuoShiftArgs {
    /// Input matrix JSON.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Amount added to the Perron root, as p/q or a decimal.
    #[arg(long)]
    pub eps: String,
    /// Explicit shift vector JSON (an array); the input must then already
    /// have constant row sums and `--eps` must equal its sum.
    #[arg(long)]
    pub q: Option<PathBuf>,
    /// Spectrum JSON of the input.
    #[arg(long)]
    pub spectrum: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BondArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    /// The shared eigenvalue, equal to the last diagonal entry of A.
    #[arg(long)]
    pub c: String,
    /// Left eigenvector JSON (an array); requires `--v`.
    #[arg(long, requires = "v")]
    pub u: Option<PathBuf>,
    /// Right eigenvector JSON (an array); requires `--u`.
    #[arg(long, requires = "u")]
    pub v: Option<PathBuf>,
    #[arg(long)]
    pub auto_normalize: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Realize5Args {
    /// t, tprime or pm.
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value = "0")]
    pub t0: String,
    #[arg(long)]
    pub t: String,
    /// p/q or auto.
    #[arg(long, default_value = "auto")]
    pub d1: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RegionArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value = "1/100")]
    pub grid_step: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long)]
    pub spectrum: PathBuf,
    #[arg(long)]
    pub jordan: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct JordanFormsArgs {
    #[arg(long)]
    pub spectrum: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DemoArgs {
    /// Directory for the report and matrix artifacts.
    #[arg(long, default_value = "demo")]
    pub out_dir: PathBuf,
    /// Random realizations sampled for the union demonstration.
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

/// How a command ended when it did not error.
pub enum Outcome {
    Pass,
    CertificateFailed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Normalize(a) => commands::normalize(a),
        Command::GuoShift(a) => commands::guo_shift(a),
        Command::Bond(a) => commands::bond(a),
        Command::Realize5(a) => commands::realize5(a),
        Command::Region(a) => commands::region(a),
        Command::Verify(a) => commands::verify(a),
        Command::JordanForms(a) => commands::jordan_forms(a),
        Command::Demo(a) => demo::run(a),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::CertificateFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
