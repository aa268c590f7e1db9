//! `treal`: command-line front end for the turing-reals toolkit.

mod cmd;
mod error;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use error::{CliError, EXIT_INVARIANT, EXIT_USAGE};
use report::{Format, Report};

/// Default seed for randomized self-tests.
pub const DEFAULT_SEED: u64 = 20240917;

#[derive(Debug, Parser)]
#[command(
    name = "treal",
    version,
    about = "Exact reals, digit codecs, root isolation, monotone covers and bit-swap analysis",
    after_help = "Exit status: 0 success, 1 domain error, 2 invariant check failed, 64 usage error \
                  (bad arguments or malformed DREAL/CSV/MCODE input)."
)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    report: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Digit streams and exact arithmetic.
    #[command(subcommand)]
    Real(cmd::real::RealCmd),
    /// Carry-free digit spreading, pair and join encodings.
    #[command(subcommand)]
    Codec(cmd::codec::CodecCmd),
    /// Root isolation for odd-degree polynomials.
    #[command(subcommand)]
    Rcf(cmd::rcf::RcfCmd),
    /// Bit strings to and from the ternary Cantor set.
    #[command(subcommand)]
    Cantor(cmd::cantor::CantorCmd),
    /// Monotone codes and monotone covers.
    #[command(subcommand)]
    Mono(cmd::mono::MonoCmd),
    /// The pair-swapping permutation and its obstructions.
    #[command(subcommand)]
    Bitswap(cmd::bitswap::BitswapCmd),
}

pub struct Ctx {
    pub seed: u64,
}

fn dispatch(command: Command, ctx: &Ctx) -> Result<Report, CliError> {
    match command {
        Command::Real(c) => cmd::real::run(c, ctx),
        Command::Codec(c) => cmd::codec::run(c, ctx),
        Command::Rcf(c) => cmd::rcf::run(c, ctx),
        Command::Cantor(c) => cmd::cantor::run(c, ctx),
        Command::Mono(c) => cmd::mono::run(c, ctx),
        Command::Bitswap(c) => cmd::bitswap::run(c, ctx),
    }
}

fn emit(report: &Report, format: Format, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let mut file = std::fs::File::create(path)?;
            report.write_to(format, &mut file)?;
        }
        None => {
            let mut lock = std::io::stdout().lock();
            report.write_to(format, &mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let ctx = Ctx { seed: cli.seed };
    let outcome = dispatch(cli.command, &ctx).and_then(|report| {
        emit(&report, cli.report, cli.out.as_ref())?;
        Ok(report)
    });
    match outcome {
        Ok(report) => {
            let failed = report.failed_checks();
            if failed.is_empty() {
                ExitCode::SUCCESS
            } else {
                eprintln!("treal: invariant check failed: {}", failed.join(", "));
                ExitCode::from(EXIT_INVARIANT as u8)
            }
        }
        Err(e) => {
            eprintln!("treal: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
