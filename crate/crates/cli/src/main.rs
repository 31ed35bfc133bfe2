mod args;
mod assets;
mod commands;
mod error;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use assets::Assets;
use error::Result;

fn run(cli: Cli) -> Result<()> {
    let assets = Assets::new(cli.assets);
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    match &cli.command {
        Command::Canon(a) => commands::canon(a, &assets, &mut out)?,
        Command::Apply(a) => commands::apply_rule(a, &assets, &mut out)?,
        Command::Toychem(a) => commands::toychem(a, &assets, &mut out)?,
        Command::Rings(a) => commands::rings(a, &assets, &mut out)?,
        Command::Ydelta(a) => commands::ydelta(a, &assets, &mut out)?,
        Command::Life(a) => commands::life(a, &assets, &mut out)?,
        Command::Sudoku(a) => commands::sudoku(a, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
