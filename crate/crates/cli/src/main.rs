//! `mpcorr`: decompose, measure and classify state files, instantiate
//! state families, and sweep families over parameter grids.

mod commands;
mod error;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::error::CliError;
use crate::sweep::SweepSpec;

#[derive(Parser, Debug)]
#[command(name = "mpcorr", version, about = "Correlation tensors and entanglement of multipartite states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coherence vectors and correlation tensors of a state file.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Correlation and entanglement measures of a state file.
    Measure {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Two-qubit classification by NSV count and partial transpose.
    Classify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate outputs over a parameter grid and write CSV.
    Sweep {
        #[arg(long)]
        family: String,
        /// name=start:stop:count; repeat for a multi-dimensional grid.
        #[arg(long = "param", required = true)]
        params: Vec<String>,
        /// Fixed parameter, name=value.
        #[arg(long = "set")]
        sets: Vec<String>,
        /// Comma list from ec, ed, ee, concurrence, entropy, nsv, ph, xi, nanb.
        #[arg(long)]
        outputs: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write a member of a state family as a state file.
    Family {
        #[arg(long)]
        family: String,
        /// name=value; repeat as needed.
        #[arg(long = "set")]
        sets: Vec<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("MPCORR_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::BadSpec(format!("MPCORR_THREADS must be a positive integer, got {v:?}")))?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| CliError::BadSpec(format!("cannot start worker threads: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Decompose { input, output } => commands::decompose_cmd(&input, output.as_deref()),
        Command::Measure { input, output } => commands::measure_cmd(&input, output.as_deref()),
        Command::Classify { input, output } => commands::classify_cmd(&input, output.as_deref()),
        Command::Sweep {
            family,
            params,
            sets,
            outputs,
            output,
        } => {
            let spec = SweepSpec::new(&family, &params, &sets, &outputs)?;
            let csv = thread_pool()?.install(|| spec.run())?;
            commands::emit(output.as_deref(), &csv)
        }
        Command::Family { family, sets, output } => commands::family_cmd(&family, &sets, output.as_deref()),
    }
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
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
