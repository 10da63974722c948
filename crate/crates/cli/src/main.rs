//! `borsuk`: batch front end for the Borsuk counterexample verifier.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser)]
#[command(
    name = "borsuk",
    version,
    about = "Exact checks of the quadratic hypercube counterexample to Borsuk's conjecture",
    after_help = "EXIT STATUS:\n  0  every check passed\n  1  a verification failed\n  2  usage error"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(clap::Args)]
struct Output {
    /// Output format (defaults depend on the subcommand)
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the main output here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full identity suite for one dimension (n ≡ 0 mod 4, n <= 12)
    Verify {
        #[arg(long)]
        n: usize,
        /// Seed for sampled checks; recorded in the report
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Search for a largest ortho-free subset of M at n = 4p and certify it
    Lemma {
        #[arg(long)]
        p: u64,
        /// Wall-clock budget for the search, in seconds
        #[arg(long, default_value_t = 60.0)]
        budget_secs: f64,
        /// Cap on explored search nodes, for runs that must be reproducible
        #[arg(long)]
        node_limit: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Scan primes for the least p where n = 4p gives a counterexample
    Bound {
        #[command(flatten)]
        output: Output,
    },
    /// Histogram of squared distances in f(M)
    Embed {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Re-check a certificate written by `lemma`
    RecheckCertificate {
        /// Certificate JSON file
        #[arg(long, value_name = "PATH")]
        cert: PathBuf,
        /// Also repeat the maximum search for exhaustive claims, with this budget
        #[arg(long)]
        budget_secs: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(commands::CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(commands::CliError::Failure(err)) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
