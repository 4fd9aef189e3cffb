#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod report;
mod selfcheck;

use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use crate::commands::RunConfig;
use crate::config::{BoundSide, SchemaError};

/// Secrecy bounds for the conferencing multiple-access wiretap channel.
#[derive(Debug, Parser)]
#[command(name = "secmac", version)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunConfig,
    /// Run the invariant checks on sampled channels and exit nonzero on a violation.
    #[arg(long)]
    self_check: bool,
    /// Seed for the channels sampled by --self-check.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lower and upper bounds for one Gaussian channel or geometry.
    Bounds,
    /// Encoder-2 location sweep (CSV, optional SVG).
    Sweep,
    /// Inner-bound point for an explicit auxiliary distribution.
    DmInner,
    /// Outer-bound point for an explicit auxiliary distribution.
    DmOuter,
    /// Pareto frontier of the inner or outer region on a lattice.
    DmFrontier,
    /// Non-conferencing bounds next to the full-cooperation capacity.
    Special,
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("SECMAC_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| SchemaError(format!("SECMAC_THREADS must be a nonnegative integer, got {v:?}")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.downcast_ref::<SchemaError>().is_some() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<secmac::Error>() {
            return match e {
                secmac::Error::BudgetExceeded { .. } => 3,
                _ => 2,
            };
        }
    }
    1
}

fn run(cli: &Cli) -> Result<ExitCode> {
    configure_threads()?;
    if cli.self_check {
        let (checks, failures) = selfcheck::run(cli.seed, cli.run.noise_credit.into())?;
        for f in &failures {
            println!("FAIL {f}");
        }
        println!("self-check: {checks} checks, {} failures", failures.len());
        return Ok(if failures.is_empty() {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        });
    }
    let Some(command) = &cli.command else {
        anyhow::bail!(SchemaError("no subcommand given (see --help)".into()));
    };
    match command {
        Command::Bounds => commands::bounds(&cli.run)?,
        Command::Sweep => commands::sweep(&cli.run)?,
        Command::DmInner => commands::dm_point(&cli.run, BoundSide::Inner)?,
        Command::DmOuter => commands::dm_point(&cli.run, BoundSide::Outer)?,
        Command::DmFrontier => commands::dm_frontier(&cli.run)?,
        Command::Special => commands::special(&cli.run)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
