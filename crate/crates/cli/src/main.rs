mod args;
mod commands;
mod error;
mod output;

use std::fs;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, OutputArgs};
use error::CliError;
use output::Document;

fn run(cli: Cli) -> Result<(Document, OutputArgs), CliError> {
    Ok(match cli.command {
        Command::Basis { n, kind, out } => (Document::Basis(commands::basis(n, kind)?), out),
        Command::Polar { file, random, n, seed, out } => {
            let doc = match (file, random) {
                (Some(path), _) => commands::polar_from_file(&path)?,
                (None, true) => commands::polar_random(n, seed)?,
                (None, false) => return Err(CliError::Usage("give a matrix file or --random --n N".into())),
            };
            (Document::Polar(doc), out)
        }
        Command::Verify { suite, run, rep, partition, out } => {
            (Document::Suite(commands::verify(suite, &run, rep, partition.as_deref())?), out)
        }
        Command::CharacterEig { partition, run, out } => {
            (Document::Character(commands::character_eig(&partition, &run)?), out)
        }
    })
}

fn emit(doc: &Document, out: &OutputArgs) -> Result<(), CliError> {
    let text = output::render(doc, out.format);
    match &out.output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Output { path: path.clone(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(args::expand_tolerance_flags(std::env::args_os())) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli).and_then(|(doc, out)| emit(&doc, &out).map(|_| doc.pass())) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
