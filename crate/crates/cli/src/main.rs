//! `parrep`: one entry point for every analysis in the toolkit.
//!
//! Exit codes: 0 on success, 1 when the operation fails on valid input,
//! 2 on a malformed command line. Failures print
//! `{"error": {"kind", "path", "message"}}` on stdout; logs go to stderr.

mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{CommandFactory, FromArgMatches};

use args::Cli;
use commands::{CliError, Output};

fn version() -> String {
    format!("{} (game format {})", env!("CARGO_PKG_VERSION"), parrep_core::FORMAT_VERSION)
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    // A closed pipe downstream is not our failure.
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn emit_json(v: &serde_json::Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("values serialize")));
}

fn fail(e: CliError) -> ExitCode {
    emit_json(&e.payload());
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let matches = match Cli::command().version(version()).try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            let rendered = e.render().to_string();
            let first = rendered.lines().next().unwrap_or("invalid command line");
            let message = first.strip_prefix("error: ").unwrap_or(first).to_string();
            return fail(CliError::Usage(message));
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => return fail(CliError::Usage(e.to_string())),
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            return fail(CliError::Usage("--threads must be positive".into()));
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    match commands::run(&cli.command, cli.format, cli.seed) {
        Ok(Output::Json(v)) => {
            emit_json(&v);
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            emit(&t);
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}
