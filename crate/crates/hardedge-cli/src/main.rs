// `!(x > 0.0)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod emit;
mod error;

use error::CliError;
use std::process::ExitCode;
use std::time::Instant;

fn threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Usage(format!("THREADS: expected a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Usage(format!("THREADS: {e}")))
}

fn main_inner() -> Result<i32, CliError> {
    threads()?;
    let cfg = match config::parse_config(std::env::args_os())? {
        Ok(cfg) => cfg,
        Err(text) => {
            print!("{text}");
            return Ok(0);
        }
    };
    eprintln!(
        "hardedge {} command={} seed={} tolerances={}",
        env!("CARGO_PKG_VERSION"),
        cfg.command.name(),
        cfg.seed,
        serde_json::to_string(&cfg.tolerances).unwrap_or_default()
    );
    let start = Instant::now();
    let outcome = commands::run(&cfg)?;
    emit::emit(&outcome.rendered, cfg.format, cfg.output_path.as_deref())?;
    let status = if outcome.passed { "ok" } else { "fail" };
    println!("{} {} {} {:.3}", cfg.command.name(), status, emit::float(outcome.max_residual), start.elapsed().as_secs_f64());
    Ok(if outcome.passed { 0 } else { 1 })
}

fn main() -> ExitCode {
    match main_inner() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            for line in e.to_string().lines().filter(|l| !l.trim().is_empty()) {
                eprintln!("error: {line}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
