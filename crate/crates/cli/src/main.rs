use std::process::ExitCode;

use clap::Parser;
use metaplectic_cli::commands::{run, Cli};

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    run(Cli::parse())
}
