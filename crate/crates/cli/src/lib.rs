//! Command-line front end for `optest`.
//!
//! Every command builds a serializable output value, renders it completely
//! in the requested format and only then writes it to stdout or `--out`.

pub mod args;
pub mod commands;
pub mod render;

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};

use args::{Cli, Command, OutputArgs};
use render::Render;

/// Renders the output of `command` without writing it anywhere.
pub fn execute(command: &Command) -> Result<String> {
    match command {
        Command::Analyze(a) => commands::analyze(a)?.render(a.output.format),
        Command::Simulate(a) => commands::simulate(a)?.render(a.output.format),
        Command::Compare(a) => commands::compare(a)?.render(a.output.format),
        Command::Sweep(a) => commands::sweep(a)?.render(a.output.format),
        Command::Oracle(a) => commands::oracle(a)?.render(a.output.format),
        Command::Repro(a) => commands::repro()?.render(a.output.format),
    }
}

fn output_args(command: &Command) -> &OutputArgs {
    match command {
        Command::Analyze(a) => &a.output,
        Command::Simulate(a) => &a.output,
        Command::Compare(a) => &a.output,
        Command::Sweep(a) => &a.output,
        Command::Oracle(a) => &a.output,
        Command::Repro(a) => &a.output,
    }
}

/// Writes through a sibling temporary file and a rename, so a failed write
/// never leaves a truncated file at `path`.
fn write_atomically(path: &Path, text: &str) -> Result<()> {
    let file_name = path
        .file_name()
        .with_context(|| format!("--out {} is not a file path", path.display()))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(file_name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    let result = fs::write(&tmp, text).and_then(|_| fs::rename(&tmp, path));
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.with_context(|| format!("cannot write {}", path.display()))
}

pub fn run(cli: &Cli) -> Result<()> {
    let text = execute(&cli.command)?;
    match &output_args(&cli.command).out {
        Some(path) => write_atomically(path, &text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}
