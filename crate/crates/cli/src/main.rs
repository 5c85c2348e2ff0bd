use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod config;
mod output;

/// chi_y genus workbench for compactifications of C^n.
#[derive(Parser, Debug)]
#[command(name = "chiy", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the projective-space regression suite for n = 1..=max-n.
    PnVerify(PnVerifyArgs),
    /// Compute chi_y and its (y+1)-expansion from Chern or Hodge numbers.
    Genus(GenusArgs),
    /// Emit the Chern-number equation system of a pair.
    System(SystemArgs),
    /// Decide integer solvability of a pair's system.
    Classify(ClassifyArgs),
    /// Per-dimension summary of roots, admissibility and forced values.
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Standard,
    Half,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    #[default]
    Ak,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExpectArg {
    NoIntegerSolution,
    Solutions,
    Inconclusive,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PnVerifyArgs {
    #[arg(long = "max-n", default_value_t = 10)]
    pub max_n: usize,
    /// Seed for the random Chern vectors fed to the closed-form check.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Negative control: perturb one binomial of P^n at this n.
    #[arg(long = "corrupt-binomial", hide = true)]
    pub corrupt: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct GenusArgs {
    /// Comma-separated c_1,...,c_n (integers or fractions).
    #[arg(
        long,
        value_delimiter = ',',
        conflicts_with = "hodge",
        allow_negative_numbers = true
    )]
    pub chern: Option<Vec<String>>,
    /// Hodge diamond file: whitespace-separated (n+1)x(n+1) matrix.
    #[arg(long)]
    pub hodge: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub branch: BranchArg,
    #[arg(long, value_enum, default_value_t)]
    pub mode: ModeArg,
}

#[derive(Args, Debug)]
pub struct SystemArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Also run linear elimination and emit its trace.
    #[arg(long)]
    pub reduced: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long = "bound-scale")]
    pub bound_scale: Option<u64>,
    /// Explicit boxes, e.g. c2=-100:100,c3=0:50.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub bounds: Vec<String>,
    /// Sieving primes for the box scan.
    #[arg(long, value_delimiter = ',')]
    pub moduli: Option<Vec<u64>>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, value_enum)]
    pub expect: Option<ExpectArg>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long = "max-n", default_value_t = 20)]
    pub max_n: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                config::EXIT_USAGE
            } else {
                0
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::PnVerify(a) => commands::pn_verify(&a),
        Command::Genus(a) => commands::genus(&a),
        Command::System(a) => commands::system(&a),
        Command::Classify(a) => commands::classify(&a),
        Command::Table(a) => commands::table(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("chiy: {f}");
            ExitCode::from(f.code())
        }
    }
}
