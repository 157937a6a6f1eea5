//! `lagrange`: batch front end to the analysis library.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::RunConfig;
use output::Format;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(lagrange_core::Error),
    Io(String),
    AcceptanceFailed,
}

impl From<lagrange_core::Error> for CliError {
    fn from(e: lagrange_core::Error) -> Self {
        CliError::Compute(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    fn report(&self) -> String {
        match self {
            CliError::Usage(m) => format!("UsageError: {m}"),
            CliError::Compute(e) => format!("{}: {e}", e.name()),
            CliError::Io(m) => format!("IoError: {m}"),
            CliError::AcceptanceFailed => "AcceptanceFailed: at least one criterion failed".into(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "lagrange", version, about = "Critical points, periods and toric classification for the Lagrange and Euler problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// All critical points of the potential
    CriticalPoints,
    /// c0, c_crit, collinear ordering and hypothesis flags
    Summary,
    /// Connected components of the Hill region
    Hill,
    /// Sampled moment-map image
    Profile,
    /// Toric classification of the profile
    Classify,
    /// Period cross-check in the Euler problem
    EulerPeriods,
    /// Threshold comparison over a parameter grid
    Scan,
    /// Integrate one separated system
    Simulate,
    /// Run the acceptance suite
    Verify,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::CriticalPoints => "critical-points",
            Command::Summary => "summary",
            Command::Hill => "hill",
            Command::Profile => "profile",
            Command::Classify => "classify",
            Command::EulerPeriods => "euler-periods",
            Command::Scan => "scan",
            Command::Simulate => "simulate",
            Command::Verify => "verify",
        }
    }
}

#[derive(Args, Debug)]
struct Flags {
    /// Mass at e (scan: X or LO:HI:N)
    #[arg(long, global = true, allow_hyphen_values = true)]
    m1: Option<String>,
    /// Mass at m (scan: X or LO:HI:N)
    #[arg(long, global = true, allow_hyphen_values = true)]
    m2: Option<String>,
    /// Elastic constant (scan: X or LO:HI:N)
    #[arg(long, global = true, allow_hyphen_values = true)]
    eps: Option<String>,
    /// Energy
    #[arg(long, global = true, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, global = true, value_parser = ["e", "m"])]
    component: Option<String>,
    /// Profile samples, or kappa values for euler-periods
    #[arg(long, global = true)]
    samples: Option<String>,
    /// Initial Hill grid resolution
    #[arg(long, global = true)]
    grid: Option<String>,
    #[arg(long, global = true, value_parser = ["csv", "json"])]
    format: Option<String>,
    #[arg(long, global = true)]
    out: Option<String>,
    /// Config file (TOML); overrides $LAGRANGE_CONFIG
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// 0 uses every core, 1 runs sequentially
    #[arg(long, global = true)]
    workers: Option<String>,
    /// Tolerance override, repeatable
    #[arg(long, global = true, value_name = "NAME=VALUE")]
    tol: Vec<String>,
    /// simulate: level
    #[arg(long, global = true, allow_hyphen_values = true)]
    kappa: Option<String>,
    /// simulate: mu or nu
    #[arg(long, global = true)]
    axis: Option<String>,
    /// simulate: number of periods
    #[arg(long, global = true)]
    periods: Option<String>,
    /// simulate: leapfrog or yoshida4
    #[arg(long, global = true)]
    integrator: Option<String>,
    /// hill: write the label mask here
    #[arg(long, global = true)]
    mask: Option<String>,
}

fn effective_config(cmd: Command, f: Flags) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig {
        command: cmd.name().to_string(),
        ..Default::default()
    };
    if let Some(path) = RunConfig::config_path(f.config.as_ref()) {
        cfg.load_file(&path)?;
    }
    for (k, v) in [
        ("m1", f.m1),
        ("m2", f.m2),
        ("eps", f.eps),
        ("c", f.c),
        ("component", f.component),
        ("samples", f.samples),
        ("grid", f.grid),
        ("format", f.format),
        ("out", f.out),
        ("workers", f.workers),
        ("kappa", f.kappa),
        ("axis", f.axis),
        ("periods", f.periods),
        ("integrator", f.integrator),
        ("mask", f.mask),
    ] {
        cfg.set(k, v);
    }
    for t in &f.tol {
        cfg.set_tol(t)?;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cmd = cli.command;
    let cfg = effective_config(cmd, cli.flags)?;
    let format: Format = cfg
        .parse_or("format", Format::Csv)
        .map_err(|_| CliError::Usage("format must be csv or json".into()))?;
    if !matches!(cmd, Command::Hill | Command::Classify | Command::Simulate) {
        cfg.check_tol(&[])?;
    }
    let out = match cmd {
        Command::CriticalPoints => commands::critical_points(&cfg)?,
        Command::Summary => commands::summary(&cfg)?,
        Command::Hill => commands::hill(&cfg)?,
        Command::Profile => commands::profile(&cfg)?,
        Command::Classify => commands::classify_cmd(&cfg)?,
        Command::EulerPeriods => commands::euler_periods(&cfg)?,
        Command::Scan => commands::scan(&cfg)?,
        Command::Simulate => commands::simulate(&cfg)?,
        Command::Verify => {
            let (ok, out) = commands::verify(&cfg, format == Format::Json)?;
            if let Some(out) = out {
                output::emit(&cfg, format, out)?;
            }
            return if ok { Ok(()) } else { Err(CliError::AcceptanceFailed) };
        }
    };
    output::emit(&cfg, format, out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            if code == 2 {
                eprintln!("UsageError");
            }
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.report());
            ExitCode::from(e.code())
        }
    }
}
