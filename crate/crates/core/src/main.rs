use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use slab::cli::{execute, Cli};

fn main() -> ExitCode {
    let run = execute(&Cli::parse());
    print!("{}", run.stdout);
    eprint!("{}", run.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(run.exit_code as u8)
}
