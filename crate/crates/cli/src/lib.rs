//! Command-line front end for `qcoherence-core`: family generation, moment
//! tables, exact identity checks and classification, all as JSON.

pub mod args;
pub mod commands;
pub mod json;
pub mod sample;

use clap::Parser;

use args::{Cli, Command, VerifyCommand};
use commands::CliError;

/// Everything a run produces; `main` only forwards it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Moments(a) => commands::moments(a),
        Command::Classify(a) => commands::classify(a),
        Command::Verify { which } => match which {
            VerifyCommand::Pearson(a) => commands::verify_pearson(a),
            VerifyCommand::Structure(a) => commands::verify_structure(a),
            VerifyCommand::Coherence(a) => commands::verify_coherence(a),
            VerifyCommand::Reduction(a) => commands::verify_reduction(a),
            VerifyCommand::Leibniz(a) => commands::verify_leibniz(a),
        },
    };
    match result {
        Ok(s) => Outcome {
            code: if s.holds { 0 } else { 1 },
            stdout: s.stdout,
            stderr: String::new(),
        },
        Err(e) => error_outcome(&e),
    }
}

fn error_outcome(e: &CliError) -> Outcome {
    let mut stderr = serde_json::to_string(&e.to_json()).expect("error JSON serializes");
    stderr.push('\n');
    Outcome {
        code: e.exit_code(),
        stdout: String::new(),
        stderr,
    }
}

/// Parses `argv` (program name first) and runs it. Usage errors exit with 2.
pub fn run_args<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => run(&cli),
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            error_outcome(&CliError::Usage(e.to_string()))
        }
    }
}
