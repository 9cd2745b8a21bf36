//! Command-line parsing into a validated [`RunConfig`].

use crate::error::CliError;
use clap::{Args, Parser, Subcommand, ValueEnum};
use hardedge::special_functions::BesselOrder;
use hardedge::symbols::{SymbolConfig, SymbolSpec};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "hardedge", version, about = "Truncated Bessel-operator determinants and the hard-edge point process")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the determinant factorization at each R.
    VerifyIdentity(IdentityArgs),
    /// |Q_R − 1| against the inverse-root envelope.
    RateScan(ScanArgs),
    /// Trace norm of the truncated difference operator against R.
    TraceScan(ScanArgs),
    /// Kolmogorov–Smirnov distance of the centered additive functional.
    Clt(CltArgs),
    /// Draw configurations of the point process on [0, R].
    Sample(SampleArgs),
    /// Norms and asymptotic constants of a symbol.
    Norms(NormsArgs),
    /// Finite-dimensional determinant identities on random matrices.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct IdentityArgs {
    /// Symbol as JSON or @file.
    #[arg(long)]
    symbol: String,
    #[arg(long)]
    nu: f64,
    /// Comma-separated truncation points.
    #[arg(long = "R", value_delimiter = ',', required = true)]
    r: Vec<f64>,
    #[arg(long, value_enum, default_value_t = IdentityMethod::Direct)]
    method: IdentityMethod,
    /// Largest accepted relative residual.
    #[arg(long, default_value_t = 1e-5)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct ScanArgs {
    #[arg(long)]
    symbol: String,
    #[arg(long)]
    nu: f64,
    #[arg(long = "R", value_delimiter = ',', required = true)]
    r: Vec<f64>,
    /// Relative slack allowed when checking that the envelope dominates.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct CltArgs {
    #[arg(long)]
    symbol: String,
    /// Rescale the symbol to unit limiting variance first.
    #[arg(long)]
    normalize: bool,
    #[arg(long, default_value_t = 0.0)]
    nu: f64,
    #[arg(long = "R", value_delimiter = ',', required = true)]
    r: Vec<f64>,
    #[arg(long, value_enum, default_value_t = CltMethodArg::CfInversion)]
    method: CltMethodArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Monte Carlo sample count.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Inversion cutoff T = c1·ln R.
    #[arg(long = "c1-factor", default_value_t = 1.0)]
    c1_factor: f64,
    /// Relative noise band for the decreasing-KS check.
    #[arg(long, default_value_t = 0.1)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct SampleArgs {
    #[arg(long)]
    nu: f64,
    /// Window length (a single value).
    #[arg(long = "R", required = true)]
    r: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of configurations.
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct NormsArgs {
    #[arg(long)]
    symbol: String,
    #[arg(long, default_value_t = 0.0)]
    nu: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    instances: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityMethod {
    Direct,
    Hankel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CltMethodArg {
    CfInversion,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    VerifyIdentity,
    RateScan,
    TraceScan,
    Clt,
    Sample,
    Norms,
    Selftest,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::VerifyIdentity => "verify-identity",
            CommandKind::RateScan => "rate-scan",
            CommandKind::TraceScan => "trace-scan",
            CommandKind::Clt => "clt",
            CommandKind::Sample => "sample",
            CommandKind::Norms => "norms",
            CommandKind::Selftest => "selftest",
        }
    }
}

/// Thresholds for the pass/fail decision of a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Identity residual, envelope slack, KS noise band or oracle residual.
    pub assertion: f64,
    /// Largest accepted discretization change (verify-identity).
    pub convergence: f64,
    /// Required log-log decay slope (scans).
    pub slope: f64,
}

/// Settings that only some commands read.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extras {
    pub identity_method: IdentityMethod,
    pub clt_method: CltMethodArg,
    pub normalize: bool,
    pub samples: usize,
    pub c1_factor: f64,
    pub count: usize,
    pub instances: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub symbol: Option<SymbolConfig>,
    pub nu: f64,
    #[serde(rename = "R")]
    pub r_values: Vec<f64>,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub extras: Extras,
}

impl RunConfig {
    pub fn order(&self) -> Result<BesselOrder, CliError> {
        Ok(BesselOrder::new(self.nu)?)
    }

    pub fn symbol_spec(&self) -> Result<SymbolSpec, CliError> {
        let cfg = self.symbol.as_ref().ok_or_else(|| CliError::Usage("--symbol is required".into()))?;
        Ok(SymbolSpec::from_config(cfg)?)
    }
}

fn parse_symbol(text: &str) -> Result<SymbolConfig, CliError> {
    let body = match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("--symbol: cannot read {path}: {e}")))?,
        None => text.to_string(),
    };
    let cfg: SymbolConfig = serde_json::from_str(&body).map_err(|e| CliError::Usage(format!("--symbol: {e}")))?;
    SymbolSpec::from_config(&cfg).map_err(|e| CliError::Usage(format!("--symbol: {e}")))?;
    Ok(cfg)
}

fn check_radii(rs: &[f64]) -> Result<(), CliError> {
    if rs.iter().any(|r| !(*r > 0.0) || !r.is_finite()) {
        return Err(CliError::Usage("--R: values must be positive and finite".into()));
    }
    if rs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Usage("--R: values must increase".into()));
    }
    Ok(())
}

fn check_positive(name: &str, v: f64) -> Result<(), CliError> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(CliError::Usage(format!("{name}: must be positive, got {v}")));
    }
    Ok(())
}

/// Parses and validates argv. Help and version requests come back as
/// `Ok(Err(text))` so the caller can print them and exit 0.
pub fn parse_config<I, T>(argv: I) -> Result<Result<RunConfig, String>, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Ok(Err(e.to_string())),
                _ => {
                    let text = e.to_string();
                    Err(CliError::Usage(text.trim_end().trim_start_matches("error: ").to_string()))
                }
            };
        }
    };
    let extras = Extras {
        identity_method: IdentityMethod::Direct,
        clt_method: CltMethodArg::CfInversion,
        normalize: false,
        samples: 0,
        c1_factor: 1.0,
        count: 0,
        instances: 0,
    };
    let tol = |assertion| Tolerances { assertion, convergence: 1e-8, slope: -0.45 };
    let cfg = match cli.command {
        Command::VerifyIdentity(a) => RunConfig {
            command: CommandKind::VerifyIdentity,
            symbol: Some(parse_symbol(&a.symbol)?),
            nu: a.nu,
            r_values: a.r,
            seed: 0,
            tolerances: tol(a.tol),
            output_path: a.output.out,
            format: a.output.format,
            extras: Extras { identity_method: a.method, ..extras },
        },
        Command::RateScan(a) => scan_config(CommandKind::RateScan, a, tol, extras)?,
        Command::TraceScan(a) => scan_config(CommandKind::TraceScan, a, tol, extras)?,
        Command::Clt(a) => {
            check_positive("--c1-factor", a.c1_factor)?;
            if a.samples < 20 && a.method == CltMethodArg::MonteCarlo {
                return Err(CliError::Usage("--samples: need at least 20".into()));
            }
            RunConfig {
                command: CommandKind::Clt,
                symbol: Some(parse_symbol(&a.symbol)?),
                nu: a.nu,
                r_values: a.r,
                seed: a.seed,
                tolerances: tol(a.tol),
                output_path: a.output.out,
                format: a.output.format,
                extras: Extras {
                    clt_method: a.method,
                    normalize: a.normalize,
                    samples: a.samples,
                    c1_factor: a.c1_factor,
                    ..extras
                },
            }
        }
        Command::Sample(a) => RunConfig {
            command: CommandKind::Sample,
            symbol: None,
            nu: a.nu,
            r_values: vec![a.r],
            seed: a.seed,
            tolerances: tol(0.0),
            output_path: a.output.out,
            format: a.output.format,
            extras: Extras { count: a.count, ..extras },
        },
        Command::Norms(a) => RunConfig {
            command: CommandKind::Norms,
            symbol: Some(parse_symbol(&a.symbol)?),
            nu: a.nu,
            r_values: vec![],
            seed: 0,
            tolerances: tol(0.0),
            output_path: a.output.out,
            format: a.output.format,
            extras,
        },
        Command::Selftest(a) => RunConfig {
            command: CommandKind::Selftest,
            symbol: None,
            nu: 0.0,
            r_values: vec![],
            seed: a.seed,
            tolerances: tol(a.tol),
            output_path: a.output.out,
            format: a.output.format,
            extras: Extras { instances: a.instances, ..extras },
        },
    };
    check_radii(&cfg.r_values)?;
    if cfg.command != CommandKind::Selftest && cfg.command != CommandKind::Norms && cfg.r_values.is_empty() {
        return Err(CliError::Usage("--R: at least one value required".into()));
    }
    BesselOrder::new(cfg.nu).map_err(|e| CliError::Usage(format!("--nu: {e}")))?;
    if !(cfg.tolerances.assertion >= 0.0) {
        return Err(CliError::Usage("--tol: must be nonnegative".into()));
    }
    Ok(Ok(cfg))
}

fn scan_config(
    command: CommandKind,
    a: ScanArgs,
    tol: impl Fn(f64) -> Tolerances,
    extras: Extras,
) -> Result<RunConfig, CliError> {
    Ok(RunConfig {
        command,
        symbol: Some(parse_symbol(&a.symbol)?),
        nu: a.nu,
        r_values: a.r,
        seed: 0,
        tolerances: tol(a.tol),
        output_path: a.output.out,
        format: a.output.format,
        extras,
    })
}
