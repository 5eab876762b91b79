//! Batch front end: one job per invocation, JSON in, JSON report out.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 parse or validation problem,
//! 3 capacity exceeded, 4 arithmetic overflow, 5 internal inconsistency.

mod config;
mod report;

use std::fmt;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use crate::config::{CommandKind, JobConfig};

#[derive(Debug, Parser)]
#[command(
    name = "twistcube",
    version,
    about = "Decides untwistedness of twisted cubes and evaluates their characters"
)]
struct Cli {
    /// What to compute.
    #[arg(value_enum)]
    command: CommandKind,

    /// Path of the JSON job config, or '-' to read it from standard input.
    #[arg(long)]
    config: String,

    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Cap on enumerated lattice points and grid pairs.
    #[arg(long)]
    point_cap: Option<u64>,

    /// Cap on the dimension whose maximal cones may be enumerated.
    #[arg(long)]
    cone_cap: Option<u32>,

    /// Attach convexity evidence at this grid denominator to `check`.
    #[arg(long)]
    grid_denom: Option<u32>,
}

#[derive(Debug)]
pub enum CliError {
    Io(String, std::io::Error),
    Parse(serde_json::Error),
    Invalid(String),
    Lib(twistcube::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(path, err) => write!(f, "{path}: {err}"),
            CliError::Parse(err) => write!(f, "invalid config: {err}"),
            CliError::Invalid(msg) => write!(f, "invalid config: {msg}"),
            CliError::Lib(err) => write!(f, "{err}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(..) => 1,
            CliError::Parse(_) | CliError::Invalid(_) => 2,
            CliError::Lib(twistcube::Error::Usage(_)) => 2,
            CliError::Lib(twistcube::Error::Capacity { .. }) => 3,
            CliError::Lib(twistcube::Error::Overflow(_)) => 4,
            CliError::Lib(twistcube::Error::Inconsistency(_)) => 5,
        }
    }
}

fn read_config(source: &str) -> Result<String, CliError> {
    if source == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|err| CliError::Io("<stdin>".to_string(), err))?;
        Ok(text)
    } else {
        std::fs::read_to_string(source).map_err(|err| CliError::Io(source.to_string(), err))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let started = Instant::now();
    let text = read_config(&cli.config)?;
    let parsed: JobConfig = serde_json::from_str(&text).map_err(CliError::Parse)?;
    let job = parsed.resolve(cli.command)?;
    let limits = job.limits(cli.point_cap, cli.cone_cap);
    let grid_denom = cli.grid_denom.or(job.options.grid_denom);
    let result = report::execute(&job, cli.command, grid_denom, &limits).map_err(CliError::Lib)?;
    let timing_ms = u64::try_from(started.elapsed().as_millis()).unwrap_or(u64::MAX);
    let rendered = report::render(&job, cli.command, result, timing_ms);
    match cli.out.as_ref().or(job.options.out.as_ref()) {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|err| CliError::Io(path.display().to_string(), err))?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
