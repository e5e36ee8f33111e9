//! The `jetforge` command line: argument handling, report headers and the
//! exit-code contract. `run_command` is the whole program minus process
//! I/O, so tests can drive it in-process.

mod args;
mod budget;
mod commands;

use std::ffi::OsString;
use std::path::Path;

use clap::error::ErrorKind;
use clap::Parser;
use sha2::{Digest, Sha256};

pub use args::{Cli, Command};
pub use budget::{resolve, Limits, DEFAULT_DEPTH};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

pub const BUDGET_ENV: &str = "JETFORGE_BUDGET";

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub(crate) enum Failure {
    Usage(String),
    Domain(String),
    Budget(String),
}

impl From<jetforge::Error> for Failure {
    fn from(e: jetforge::Error) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

/// Runs one command, reading the budget override from the environment.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env = std::env::var(BUDGET_ENV).ok();
    run_with_env(argv, env.as_deref())
}

/// Runs one command with an explicit budget override string.
pub fn run_with_env<I, T>(argv: I, env: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    let limits = match resolve(&cli.budget, env) {
        Ok(l) => l,
        Err(msg) => return usage(msg),
    };
    let path = &cli.command.input().file;
    let bytes = match std::fs::read(path) {
        Ok(b) => b,
        Err(e) => return usage(format!("cannot read {}: {e}", path.display())),
    };
    let mut out = header(&argv, path, &bytes);
    let result = commands::run(&cli.command, &bytes, &limits, &mut out);
    match result {
        Ok(()) => Outcome { code: EXIT_OK, stdout: out, stderr: String::new() },
        Err(Failure::Usage(msg)) => usage(msg),
        Err(Failure::Domain(msg)) => {
            Outcome { code: EXIT_DOMAIN, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
        Err(Failure::Budget(msg)) => {
            Outcome { code: EXIT_BUDGET, stdout: out, stderr: format!("budget exhausted: {msg}\n") }
        }
    }
}

fn usage(msg: String) -> Outcome {
    Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("usage error: {msg}\n") }
}

/// Tool version, the command with file arguments reduced to their names,
/// and the input digest.
fn header(argv: &[OsString], path: &Path, bytes: &[u8]) -> String {
    let shown: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|a| {
            let p = Path::new(a);
            if p.components().count() > 1 && p.exists() {
                p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
            } else {
                a.to_string_lossy().into_owned()
            }
        })
        .collect();
    let digest = hex::encode(Sha256::digest(bytes));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    format!(
        "# jetforge {}\n# command: {}\n# input: {} sha256:{}\n",
        env!("CARGO_PKG_VERSION"),
        shown.join(" "),
        name,
        digest
    )
}
