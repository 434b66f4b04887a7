use std::process::ExitCode;

use clap::Parser;

use optest_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match optest_cli::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = format!("{e:#}").replace('\n', " ");
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
