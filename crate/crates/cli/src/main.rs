mod args;
mod commands;
mod render;
mod repl;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::{CliError, EXIT_INVALID};

const EXIT_USAGE: u8 = 1;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn emit(text: &str) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| CliError::invalid(format!("writing output: {e}")))
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Query(a) => {
            if let Some(k) = a.level {
                commands::check_level(k)?;
            }
            let schema = commands::read_schema(&a.schema)?;
            let data = commands::read_dataset(&a.data, &schema)?;
            let text = match (&a.q, &a.query_file) {
                (Some(q), _) => q.clone(),
                (None, Some(p)) => fs::read_to_string(p)
                    .map_err(|e| CliError::invalid(format!("{}: {e}", p.display())))?
                    .trim()
                    .to_string(),
                (None, None) => unreachable!("clap requires --q or --query-file"),
            };
            let run = commands::run_query(&text, &data, a.level, a.explain)?;
            for w in commands::warnings(&run) {
                eprintln!("{w}");
            }
            emit(&commands::format_query(&run, &data, a.format))
        }
        Command::Repl(a) => {
            let schema = commands::read_schema(&a.schema)?;
            let data = commands::read_dataset(&a.data, &schema)?;
            repl::Repl::new(data, a.format, a.explain)
                .run(io::stdin().lock(), io::stdout().lock())
                .map_err(|e| CliError {
                    code: EXIT_INVALID,
                    message: format!("i/o: {e}"),
                })
        }
        Command::Partition(a) => {
            commands::check_level(a.level)?;
            let schema = commands::read_schema(&a.schema)?;
            let table = commands::partition_table(&schema, &a.attr, a.level)?;
            emit(&commands::format_partition(&table, a.format))
        }
        Command::Locate(a) => {
            commands::check_level(a.level)?;
            let schema = commands::read_schema(&a.schema)?;
            let out = commands::locate(&schema, &a.attr, a.level, &a.value)?;
            emit(&commands::format_locate(&out, a.format))
        }
        Command::Validate(a) => emit(&commands::validate(&a.schema, a.data.as_deref())?),
    }
}
