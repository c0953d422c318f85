//! `einstein4` command-line front-end.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on usage or I/O errors.

mod args;
mod commands;

use clap::Parser;
use std::process::ExitCode;

use args::{Cli, Command};

fn run(cli: &Cli) -> Result<commands::Outcome, String> {
    let model_flag = match &cli.command {
        Command::Certify(a) => a.model.model.as_deref(),
        Command::Chern(a) => a.model.model.as_deref(),
        Command::ConformalCheck(a) => a.model.model.as_deref(),
        _ => None,
    };
    let s = args::settings(&cli.global, model_flag)?;
    match &cli.command {
        Command::Decompose(a) => commands::decompose_cmd(a.input.as_deref(), &s),
        Command::Certify(a) => commands::certify_cmd(a, &s),
        Command::Chern(a) => commands::chern_cmd(a, &s),
        Command::ConformalCheck(a) => commands::conformal_cmd(a, &s),
        Command::SpinorCheck(a) => commands::spinor_cmd(a, &s),
        Command::Obstruct(a) => commands::obstruct_cmd(a, &s),
        Command::Enumerate => commands::enumerate_cmd(&s),
        Command::Report(a) => commands::report_cmd(a, &s),
    }
    .and_then(|outcome| {
        match s.output.as_deref().filter(|p| *p != std::path::Path::new("-")) {
            Some(path) => std::fs::write(path, &outcome.body).map_err(|e| format!("cannot write {}: {e}", path.display()))?,
            None => print!("{}", outcome.body),
        }
        Ok(outcome)
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string().lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ").to_owned();
            eprintln!("einstein4: error: {first}");
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(outcome) if outcome.passed => ExitCode::SUCCESS,
        Ok(_) => {
            eprintln!("einstein4: one or more checks failed");
            ExitCode::from(1)
        }
        Err(msg) => {
            eprintln!("einstein4: error: {msg}");
            ExitCode::from(2)
        }
    }
}
