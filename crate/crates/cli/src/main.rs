use std::process::ExitCode;

use clap::Parser;
use treecoeff_cli::args::Cli;

fn main() -> ExitCode {
    treecoeff_cli::main_with(Cli::parse())
}
