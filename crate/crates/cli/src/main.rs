use std::process::ExitCode;

use clap::Parser;
use cnotpac_cli::{commands, Cli, Exit};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Exit::Failure as u8 } else { 0 });
        }
    };
    ExitCode::from(commands::run(&cli) as u8)
}
