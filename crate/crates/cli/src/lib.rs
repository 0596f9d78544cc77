//! `udwlab`: figure reproduction, channel reports and sweeps.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid input, 3 quadrature
//! failure, 4 Fock truncation too small.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod config;
pub mod output;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use udw_core::field::QuadratureConfig;
use udw_core::par::Execution;

use args::InputError;
use commands::Context;
use config::FileConfig;
use output::{Format, Output};


#[derive(Parser, Debug)]
#[command(name = "udwlab", version, about = "Unruh-DeWitt qubit channels: figures, reports and sweeps")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format [default: csv, json for analyze and oracle]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for grid rows [default: 1]
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// TOML file with default values for any flag
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Relative tolerance of the momentum quadrature [default: 1e-9]
    #[arg(long, global = true, env = "UDWLAB_QUAD_TOL")]
    quad_tol: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Ground-state recovery gap against the Petz bound
    Fig1(commands::Fig1Args),
    /// Thermal-state recovery gap with closed forms
    Fig2(commands::Fig2Args),
    /// Field Rényi-2 entropy against temperature
    Fig3(commands::Fig3Args),
    /// Full report for one channel
    Analyze(commands::AnalyzeArgs),
    /// Smeared two-point value for one profile
    Wightman(commands::WightmanArgs),
    /// Truncated-mode cross-check of the analytic channel
    Oracle(commands::OracleArgs),
    /// Channel quantities along a grid of W(f,f)
    Sweep(commands::SweepArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Fig1(_) => "fig1",
            Command::Fig2(_) => "fig2",
            Command::Fig3(_) => "fig3",
            Command::Analyze(_) => "analyze",
            Command::Wightman(_) => "wightman",
            Command::Oracle(_) => "oracle",
            Command::Sweep(_) => "sweep",
        }
    }

    fn default_format(&self) -> Format {
        match self {
            Command::Analyze(_) | Command::Oracle(_) => Format::Json,
            _ => Format::Csv,
        }
    }

    fn run(self, ctx: &Context) -> anyhow::Result<Output> {
        match self {
            Command::Fig1(a) => commands::fig1(a, ctx),
            Command::Fig2(a) => commands::fig2(a, ctx),
            Command::Fig3(a) => commands::fig3(a, ctx),
            Command::Analyze(a) => commands::analyze(a, ctx),
            Command::Wightman(a) => commands::wightman(a, ctx),
            Command::Oracle(a) => commands::oracle(a, ctx),
            Command::Sweep(a) => commands::sweep(a, ctx),
        }
    }
}

/// Process exit code for a failed run.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<udw_core::Error>() {
            return match e {
                udw_core::Error::QuadratureNoConvergence { .. } => 3,
                udw_core::Error::TruncationTooSmall { .. } => 4,
                _ => 2,
            };
        }
        if cause.downcast_ref::<InputError>().is_some() {
            return 2;
        }
    }
    1
}

#[cfg(feature = "parallel")]
fn with_jobs<R: Send>(jobs: usize, f: impl FnOnce(Execution) -> R + Send) -> anyhow::Result<R> {
    if jobs <= 1 {
        return Ok(f(Execution::Sequential));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    Ok(pool.install(|| f(Execution::Parallel)))
}

#[cfg(not(feature = "parallel"))]
fn with_jobs<R: Send>(_jobs: usize, f: impl FnOnce(Execution) -> R + Send) -> anyhow::Result<R> {
    Ok(f(Execution::Sequential))
}

/// Runs a parsed invocation and returns the rendered output together with
/// the path it should be written to (`None` for stdout).
pub fn render(cli: Cli) -> anyhow::Result<(String, Option<PathBuf>)> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let name = cli.command.name();
    let format = file
        .pick(cli.format, name, "format")?
        .unwrap_or_else(|| cli.command.default_format());
    let jobs = file.pick(cli.jobs, name, "jobs")?.unwrap_or(1);
    if jobs == 0 {
        return Err(args::invalid("--jobs must be at least 1"));
    }
    let out = file.pick::<PathBuf>(cli.out, name, "out")?;
    let quad = match file.pick(cli.quad_tol, name, "quad_tol")? {
        Some(tol) => QuadratureConfig::default().with_rel_tol(tol),
        None => QuadratureConfig::default(),
    };
    quad.validate()?;

    let command = cli.command;
    let output = with_jobs(jobs, |exec| {
        let ctx = Context {
            command: name,
            file: &file,
            exec,
            quad,
        };
        command.run(&ctx)
    })??;
    Ok((output.render(format), out))
}

/// Parses `argv` (program name first) and renders the output.
pub fn render_args<I, T>(argv: I) -> anyhow::Result<String>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| args::invalid(e.to_string()))?;
    Ok(render(cli)?.0)
}

pub fn run(cli: Cli) -> anyhow::Result<()> {
    let (text, out) = render(cli)?;
    match out {
        Some(path) => std::fs::write(&path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
