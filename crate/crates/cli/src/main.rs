use std::process::ExitCode;

use adafilter_cli::{deliver, error_kind, run, RunConfig};
use clap::Parser;

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match run(&config).and_then(|out| deliver(&out, config.output.as_deref())) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error[{}]: {err}", error_kind(&err));
            ExitCode::FAILURE
        }
    }
}
