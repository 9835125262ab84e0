use std::process::ExitCode;

use bohr_cli::config::Cli;
use bohr_cli::format::emit;
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match bohr_cli::run(&cli) {
        Ok(outcome) => {
            let out = bohr_cli::out_path(&cli);
            if let Err(e) = emit(&outcome.text, out) {
                eprintln!("bohr: cannot write output: {e}");
                return ExitCode::from(1);
            }
            match outcome.note {
                Some(note) if out.is_some() || !outcome.note_in_text => eprintln!("{note}"),
                _ => {}
            }
            ExitCode::from(outcome.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("bohr: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
