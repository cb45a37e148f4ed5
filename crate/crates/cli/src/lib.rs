//! Command-line front end. [`run`] parses an argument vector, executes one
//! command and returns the exit code with the rendered report.
//!
//! Exit codes: 0 pass (or partial), 1 a mathematical check failed, 2 usage
//! or input error, 3 a resource cap was reached.

pub mod args;
pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::time::Instant;

use clap::Parser;
use repdim::Error;
use serde_json::json;

use args::{Cli, Format};
use report::{CommandEcho, Report, Status, Timing};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug)]
pub struct Execution {
    pub exit_code: i32,
    /// Absent when the arguments did not parse.
    pub report: Option<Report>,
    /// What goes to standard output.
    pub rendered: String,
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::CapExceeded(_) => EXIT_CAP,
        Error::InvalidParameter(_)
        | Error::NonPrimeModulus(_)
        | Error::RankTooLarge { .. }
        | Error::EvenRankUnsupported(_)
        | Error::BadComposition(_)
        | Error::UnsupportedRank(_)
        | Error::UnsupportedOrder(_)
        | Error::SerialityError(_)
        | Error::FieldMismatch(..)
        | Error::Parse(_)
        | Error::Io(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

pub fn run<I, T>(argv: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            return Execution { exit_code: code, report: None, rendered: e.render().to_string() };
        }
    };
    let echo = CommandEcho {
        subcommand: cli.command.name().to_string(),
        args: argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
    };
    let start = Instant::now();
    let (mut report, exit_code) = match commands::execute(&cli) {
        Ok(out) => {
            let code = if out.status == Status::Fail { EXIT_FAIL } else { EXIT_PASS };
            (Report::new(echo, cli.seed, out.status, out.payload, out.citations), code)
        }
        Err(e) => {
            let payload = json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } });
            (Report::new(echo, cli.seed, Status::Fail, payload, Vec::new()), exit_code_for(&e))
        }
    };
    report.timing = Some(Timing { elapsed_ms: start.elapsed().as_millis() });
    let body = match cli.format {
        Format::Json => report.to_json(true) + "\n",
        Format::Text => report.to_text(),
    };
    let (rendered, exit_code) = match &cli.output {
        None => (body, exit_code),
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => (format!("report written to {}\n", path.display()), exit_code),
            Err(e) => (format!("cannot write {}: {e}\n", path.display()), EXIT_USAGE),
        },
    };
    Execution { exit_code, report: Some(report), rendered }
}
