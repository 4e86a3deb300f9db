//! Command-line front end for `treecoeff`.

pub mod args;
pub mod cache;
mod commands;
pub mod error;
pub mod render;
pub mod verify;

use std::io::Write;
use std::process::ExitCode;

use treecoeff::enumerate::Caps;

use args::Cli;
use cache::Cache;
use error::{CliError, CliResult};

/// Caps from `--caps` (or its environment variable), then the dedicated flags.
pub fn resolve_caps(cli: &Cli) -> CliResult<Caps> {
    let mut caps: Caps = match &cli.caps {
        Some(s) => s.parse()?,
        None => Caps::default(),
    };
    if let Some(v) = cli.cap_trees {
        caps.trees = v;
    }
    if let Some(v) = cli.cap_letters {
        caps.letters = v;
    }
    if let Some(v) = cli.cap_poly {
        caps.poly = v;
    }
    caps.validate()?;
    Ok(caps)
}

pub fn run(cli: &Cli) -> CliResult<()> {
    let ctx = commands::Context {
        caps: resolve_caps(cli)?,
        cache: cli.cache_dir.as_deref().map(Cache::open).transpose()?,
        verbose: cli.verbose,
    };
    let outcome = commands::execute(&cli.command, cli.format, &ctx)?;
    match &cli.out {
        Some(path) => cache::write_atomic(path, outcome.text.as_bytes())?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(outcome.text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::io(std::path::Path::new("<stdout>"), e))?;
        }
    }
    outcome.status
}

/// Runs the parsed command and turns errors into a message and exit code.
pub fn main_with(cli: Cli) -> ExitCode {
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
