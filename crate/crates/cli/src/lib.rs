//! Command line front end for `euler-lax`: run configuration, LAXF
//! snapshots, JSON reports and CSV diagnostics.
//!
//! Exit codes: 0 when every check passes, 1 on a numerical failure or a
//! violated tolerance, 2 on usage or configuration errors.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod snapshot;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::RunConfig;
pub use error::{CliError, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(
    name = "euler-lax",
    version,
    about = "2D Euler vorticity solver and Lax pair verification"
)]
struct Args {
    /// Config file with `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    n: Option<String>,
    #[arg(long, global = true)]
    dt: Option<String>,
    /// End time.
    #[arg(long = "T", global = true)]
    t_end: Option<String>,
    /// Initial condition: zero, shear, taylor-green, perturbed-shear, random-band.
    #[arg(long, global = true)]
    ic: Option<String>,
    #[arg(long, global = true)]
    seed: Option<String>,
    /// Mode box radius.
    #[arg(long = "K", global = true)]
    k: Option<String>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Suite for `verify`: bracket, compatibility, zakharov, conservation.
    #[arg(long, global = true)]
    suite: Option<String>,
    /// Any config key, e.g. `--set ic.eps=0.2`; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    set: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Integrate the flow, writing snapshots and a diagnostics table.
    Simulate,
    /// Run a residual suite and write its report.
    Verify,
    /// Track the spectrum of the truncated L along the flow.
    Spectrum,
    /// Transport an eigenfunction on a stationary flow.
    Transport,
}

/// Defaults, then the config file, then `--set`, then dedicated flags.
fn resolve(args: &Args) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &args.config {
        cfg.apply_file(path)?;
    }
    for item in &args.set {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--set expects KEY=VALUE, got `{item}`")))?;
        cfg.set(k.trim(), v)?;
    }
    let flags = [
        ("n", &args.n),
        ("dt", &args.dt),
        ("T", &args.t_end),
        ("ic", &args.ic),
        ("seed", &args.seed),
        ("K", &args.k),
        ("out", &args.out),
        ("suite", &args.suite),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            cfg.set(key, v)?;
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let _ = e.print();
            return code;
        }
    };
    let result = resolve(&args).and_then(|cfg| match args.command {
        Command::Simulate => commands::simulate(&cfg),
        Command::Verify => commands::verify(&cfg),
        Command::Spectrum => commands::spectrum(&cfg),
        Command::Transport => commands::transport(&cfg),
    });
    match result {
        Ok(true) => EXIT_PASS,
        Ok(false) => {
            eprintln!("one or more checks failed");
            EXIT_FAIL
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
