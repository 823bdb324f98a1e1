//! `mtg`: build, decode, encrypt with and attack multi-twisted Goppa codes.
//!
//! Exit codes: 0 success, 2 input error, 3 decode or decrypt failure,
//! 4 resource bound exceeded.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Failure(String),
    Bound(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> CliError {
        CliError::Input(msg.into())
    }

    pub fn failure(msg: impl Into<String>) -> CliError {
        CliError::Failure(msg.into())
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failure(_) => 3,
            CliError::Bound(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Failure(m) | CliError::Bound(m) => m,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "mtg", version, about = "Multi-twisted Goppa codes: construction, decoding, encryption and attack experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build, decode and measure codes given by a parameter file.
    #[command(subcommand)]
    Code(CodeCommand),
    /// Generate a key pair from a `key = value` config.
    Keygen(KeygenArgs),
    /// Encrypt an error vector (read from --in, or sampled from --seed).
    Encrypt(EncryptArgs),
    /// Recover the error vector from a ciphertext.
    Decrypt(DecryptArgs),
    /// Key-recovery experiments.
    #[command(subcommand)]
    Attack(AttackCommand),
    /// Quasi-cyclic constructions.
    #[command(subcommand)]
    Qc(QcCommand),
    /// Operation-count benchmarks.
    #[command(subcommand)]
    Bench(BenchCommand),
}

#[derive(Subcommand, Debug)]
enum CodeCommand {
    /// Write H, the expanded H, G and a report into a directory.
    Build(BuildArgs),
    /// Decode a received word.
    Decode(DecodeArgs),
    /// Brute-force minimum distance.
    Distance(DistanceArgs),
}

#[derive(Subcommand, Debug)]
enum AttackCommand {
    /// False-positive rate of the shortened syndrome test.
    FpRate(ExperimentArgs),
    /// Recover g from a code with known support points.
    Recover(RecoverArgs),
    /// Per-point support recovery probe.
    SupportProbe(ExperimentArgs),
}

#[derive(Subcommand, Debug)]
enum QcCommand {
    /// Build a QC code and its packed key.
    Build(QcBuildArgs),
}

#[derive(Subcommand, Debug)]
enum BenchCommand {
    /// Decoder operation counts over an (n, t) grid.
    Decode(ExperimentArgs),
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(long)]
    pub params: PathBuf,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
    /// Largest codebook enumerated for the distance report.
    #[arg(long, default_value_t = 1 << 20)]
    pub bound: u128,
}

#[derive(Args, Debug)]
pub struct DecodeArgs {
    #[arg(long)]
    pub params: PathBuf,
    /// Received word, whitespace-separated symbols.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Error vector output; the codeword goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the decoding transcript here.
    #[arg(long)]
    pub transcript: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DistanceArgs {
    #[arg(long)]
    pub params: PathBuf,
    #[arg(long, default_value_t = 1 << 20)]
    pub bound: u128,
}

#[derive(Args, Debug)]
pub struct KeygenArgs {
    /// Config with field, base, s0, n, t and twist.
    #[arg(long)]
    pub params: PathBuf,
    #[arg(long)]
    pub seed: u64,
    /// Writes `<out>.pub` and `<out>.sec`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct EncryptArgs {
    /// Public key file.
    #[arg(long)]
    pub key: PathBuf,
    /// Error vector; when absent one is sampled from --seed.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Where to store a sampled error vector.
    #[arg(long)]
    pub error_out: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct DecryptArgs {
    /// Secret key file.
    #[arg(long)]
    pub key: PathBuf,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct ExperimentArgs {
    /// `key = value` config.
    #[arg(long)]
    pub params: PathBuf,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    /// CSV output; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RecoverArgs {
    /// Code parameter file; the true g is used only to score the result.
    #[arg(long)]
    pub params: PathBuf,
    #[arg(long)]
    pub seed: u64,
    /// Number of leading support points revealed (default: all).
    #[arg(long)]
    pub known: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct QcBuildArgs {
    /// QC description (`mtg-qc-params v1`).
    #[arg(long)]
    pub params: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1 << 20)]
    pub bound: u128,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Code(CodeCommand::Build(a)) => commands::code_build(&a),
        Command::Code(CodeCommand::Decode(a)) => commands::code_decode(&a),
        Command::Code(CodeCommand::Distance(a)) => commands::code_distance(&a),
        Command::Keygen(a) => commands::keygen(&a),
        Command::Encrypt(a) => commands::encrypt(&a),
        Command::Decrypt(a) => commands::decrypt(&a),
        Command::Attack(AttackCommand::FpRate(a)) => commands::attack_fp_rate(&a),
        Command::Attack(AttackCommand::Recover(a)) => commands::attack_recover(&a),
        Command::Attack(AttackCommand::SupportProbe(a)) => commands::attack_support_probe(&a),
        Command::Qc(QcCommand::Build(a)) => commands::qc_build(&a),
        Command::Bench(BenchCommand::Decode(a)) => commands::bench_decode(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mtg: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
