//! `equisurf` command line: generate / verify / info / section.
//!
//! Exit codes: 0 success (or property pass), 1 property fail, 2 usage
//! error, 3 I/O error.

mod args;
mod commands;
mod recipes;

use args::{Cli, Command};
use clap::Parser;
use commands::CmdError;

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    // Clap exits with 2 on malformed flags and 0 for --help/--version.
    let cli = Cli::parse();

    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be >= 1");
            return 2;
        }
        // Ignore the error if a pool already exists (e.g. under tests).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }

    let outcome = match &cli.command {
        Command::Generate(args) => commands::cmd_generate(args, cli.degrees).map(|()| 0),
        Command::Verify(args) => {
            commands::cmd_verify(args, cli.degrees).map(|passed| if passed { 0 } else { 1 })
        }
        Command::Info(args) => commands::cmd_info(args, cli.degrees).map(|()| 0),
        Command::Section(args) => commands::cmd_section(args, cli.degrees).map(|()| 0),
    };

    match outcome {
        Ok(code) => code,
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CmdError::Io(msg)) => {
            eprintln!("error: {msg}");
            3
        }
    }
}
