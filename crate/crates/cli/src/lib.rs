//! The `ramcoh` command line: argument parsing, dispatch to the library
//! crates, and deterministic JSON or text reports.

pub mod acceptance;
pub mod args;
pub mod commands;
pub mod quick;
pub mod report;

use std::ffi::OsString;

use clap::Parser;
use ramcoh_valuation::{is_prime, Error};

use args::{Cli, Command};
pub use report::{Outcome, RunConfig, VERSION};

/// Exit status, report text, and diagnostics for one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dispatch {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Exit code for a library error: lost precision is a failed
/// verification, everything else is a usage problem.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::PrecisionExhausted(_) => 1,
        _ => 2,
    }
}

pub fn dispatch<I, T>(argv: I) -> Dispatch
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Dispatch { code, stdout: text, stderr: String::new() }
            } else {
                Dispatch { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let usage = |msg: String| Dispatch { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") };
    if cli.precision < 4 {
        return usage(format!("--precision must be at least 4, got {}", cli.precision));
    }
    if !is_prime(cli.p) {
        return usage(format!("--p must be prime, got {}", cli.p));
    }
    let params = match &cli.command {
        Command::Different(a) => serde_json::to_value(a),
        Command::Herbrand(a) => serde_json::to_value(a),
        Command::Jumps(a) => serde_json::to_value(a),
        Command::Suffram(a) => serde_json::to_value(a),
        Command::Tracelab(a) => serde_json::to_value(a),
        Command::Ledger(a) => serde_json::to_value(a),
        Command::Liecoh(a) => serde_json::to_value(a),
        Command::Decalage(a) => serde_json::to_value(a),
        Command::Btball(a) => serde_json::to_value(a),
        Command::Theorema(a) => serde_json::to_value(a),
        Command::Witt(a) => serde_json::to_value(a),
        Command::Selftest(a) => serde_json::to_value(a),
    }
    .expect("arguments serialize");
    let cfg = RunConfig {
        command: cli.command.name().into(),
        p: cli.p,
        precision: cli.precision,
        seed: cli.seed,
        format: cli.format,
        params,
    };
    let outcome = match &cli.command {
        Command::Different(a) => commands::different(&cfg, a),
        Command::Herbrand(a) => commands::herbrand(&cfg, a),
        Command::Jumps(a) => commands::jumps(&cfg, a),
        Command::Suffram(a) => commands::suffram(&cfg, a),
        Command::Tracelab(a) => commands::tracelab(&cfg, a),
        Command::Ledger(a) => commands::ledger(&cfg, a),
        Command::Liecoh(a) => commands::liecoh(&cfg, a),
        Command::Decalage(a) => commands::decalage(&cfg, a),
        Command::Btball(a) => commands::btball(&cfg, a),
        Command::Theorema(a) => commands::theorema(&cfg, a),
        Command::Witt(a) => commands::witt(&cfg, a),
        Command::Selftest(a) => commands::selftest(&cfg, a),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            return Dispatch {
                code: error_code(&e),
                stdout: String::new(),
                stderr: format!("error [{}]: {e}\n", e.kind()),
            }
        }
    };
    let text = report::render(&cfg, &outcome);
    let code = if outcome.ok { 0 } else { 1 };
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Dispatch { code, stdout: String::new(), stderr: String::new() },
            Err(e) => usage(format!("cannot write {}: {e}", path.display())),
        },
        None => Dispatch { code, stdout: text, stderr: String::new() },
    }
}

/// Applies `RAMCOH_THREADS` to the global worker pool.
pub fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("RAMCOH_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| format!("RAMCOH_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("RAMCOH_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}
