#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod cli;
mod commands;
mod config;
mod error;
mod format;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::cli::Cli;
use crate::commands::{Outcome, Summary};
use crate::error::CliError;

fn print_summary(outcome: Option<&Outcome>, err: Option<&CliError>) {
    let code = err.map_or(0, CliError::exit_code);
    let summary = Summary {
        status: if code == 0 { "ok" } else { "error" },
        exit_code: code,
        rows: outcome.map_or(0, |o| o.rows),
        message: err.map(ToString::to_string),
    };
    let mut doc = toml::map::Map::new();
    doc.insert("summary".into(), toml::Value::try_from(summary).expect("summary serializes"));
    eprint!("{}", toml::to_string(&doc).expect("summary serializes"));
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    let cfg = match config::resolve(cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            print_summary(None, Some(&e));
            return Err(e);
        }
    };
    eprint!("{}", cfg.to_toml());
    let mut outcome = match commands::run(&cfg) {
        Ok(o) => o,
        Err(e) => {
            print_summary(None, Some(&e));
            return Err(e);
        }
    };
    let recorded = outcome.error.take();
    let written = match &cfg.output {
        Some(path) => commands::write_file(path, &outcome.text).and_then(|_| {
            if cfg.gnuplot {
                commands::write_file(&path.with_extension("gp"), &commands::gnuplot_script(&cfg, &outcome, path))
            } else {
                Ok(())
            }
        }),
        None => std::io::stdout()
            .write_all(outcome.text.as_bytes())
            .map_err(|source| CliError::Write { path: "stdout".into(), source }),
    };
    let result = written.and_then(|_| recorded.map_or(Ok(()), Err));
    print_summary(Some(&outcome), result.as_ref().err());
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            // stderr stays valid TOML
            eprintln!("# error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
