//! `codedcache`: construct, certify, simulate and compare coded caching schemes.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 a verification or
//! simulation that ran and failed.

mod commands;
mod error;
mod scheme_file;

use clap::{Parser, Subcommand};
use error::CliError;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "codedcache", version, about = "Coded caching schemes from linear block codes")]
struct Cli {
    /// Worker threads for the library's parallel loops (default: all cores).
    #[arg(long, global = true, env = "CODEDCACHE_THREADS")]
    threads: Option<usize>,
    /// Report failures as a JSON object on stderr.
    #[arg(long, global = true)]
    error_json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a code, certify its window property and write a scheme file.
    Construct(commands::construct::Args),
    /// Recheck the window property of a scheme file.
    Verify(commands::verify::Args),
    /// Run placement and delivery on random payloads and check every user's file.
    Simulate(commands::simulate::Args),
    /// Find a code with the window property for every dimension of a length/alphabet pair.
    Search(commands::search::Args),
    /// Tabulate operating points of schemes and baselines.
    Compare(commands::compare::Args),
    /// Emit subpacketization exponent data for plotting.
    Exponent(commands::exponent::Args),
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().map_err(|e| CliError::domain("Threads", e.to_string()))?;
    }
    match cli.command {
        Command::Construct(a) => commands::construct::run(a),
        Command::Verify(a) => commands::verify::run(a),
        Command::Simulate(a) => commands::simulate::run(a),
        Command::Search(a) => commands::search::run(a),
        Command::Compare(a) => commands::compare::run(a),
        Command::Exponent(a) => commands::exponent::run(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.error_json;
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if json {
                eprintln!("{}", e.to_json());
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
