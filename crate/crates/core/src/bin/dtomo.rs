use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dtomo::runner::{execute, Command, RunConfig, RunOptions};
use dtomo::Error;

#[derive(Parser)]
#[command(name = "dtomo", version, about = "Direct wave-function tomography as complex phase estimation")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reconstruct every amplitude of a state from exact or sampled probabilities
    Reconstruct(Args),
    /// Sweep the inverse variances of phi1 and phi2 over a phase grid
    Scan(Args),
    /// Fisher information and Cramer-Rao bound of the NOON pointer versus N
    Fisher(Args),
    /// Monte Carlo estimator variances against the analytic ones
    Mc(Args),
}

#[derive(clap::Args)]
struct Args {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
}

fn run(cli: Cli) -> Result<(), Error> {
    let (command, args) = match cli.command {
        Cmd::Reconstruct(a) => (Command::Reconstruct, a),
        Cmd::Scan(a) => (Command::Scan, a),
        Cmd::Fisher(a) => (Command::Fisher, a),
        Cmd::Mc(a) => (Command::Mc, a),
    };
    let text =
        std::fs::read_to_string(&args.config).map_err(|e| Error::Io(format!("{}: {e}", args.config.display())))?;
    let opts = RunOptions { seed: args.seed, threads: args.threads };
    let csv = execute(command, &text, &opts)?;
    let out = args.out.or_else(|| RunConfig::parse(&text).ok().and_then(|c| c.out).map(PathBuf::from));
    match out {
        Some(path) => std::fs::write(&path, csv).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dtomo: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
