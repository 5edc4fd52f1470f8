mod args;
mod commands;
mod overrides;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Usage errors exit with 2, runtime failures with 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Run(qksvm_core::Error),
}

impl From<qksvm_core::Error> for CliError {
    fn from(e: qksvm_core::Error) -> Self {
        CliError::Run(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Run(e.into())
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(u8::try_from(e.exit_code()).unwrap_or(2));
        }
    };
    let result = match cli.command {
        Command::GenData(a) => commands::gen_data(&a),
        Command::Kernel(a) => commands::kernel(&a),
        Command::TrainEval(a) => commands::train_eval(&a),
        Command::SweepDepth(a) => commands::sweep_depth(&a),
        Command::SweepKernels(a) => commands::sweep_kernels(&a),
        Command::Plot(a) => commands::plot(&a),
        Command::Suite(a) => commands::suite(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
