mod args;
mod commands;
mod error;
mod input;
mod output;

use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::Cli;
use crate::error::{CliError, EXIT_USAGE};
use crate::output::error_envelope;

fn emit(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| CliError::Internal(format!("cannot write output: {e}")))
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("error: {e}");
    // if even the envelope cannot be written there is nothing left to report
    let _ = emit(&error_envelope(&e));
    ExitCode::from(e.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            let message = first.trim_start_matches("error: ").to_string();
            let _ = emit(&error_envelope(&CliError::Usage(message)));
            return ExitCode::from(EXIT_USAGE);
        }
    };

    let result = panic::catch_unwind(AssertUnwindSafe(|| {
        commands::run(&cli).and_then(|out| out.render(cli.format))
    }));
    let rendered = match result {
        Ok(r) => r,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            Err(CliError::Internal(format!("internal error: {msg}")))
        }
    };
    match rendered.and_then(|text| emit(&text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}
