mod commands;
mod input;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use chipfire::lattice::DEFAULT_ENUMERATION_CAP;
use clap::{Parser, Subcommand};

use crate::commands::*;
use crate::input::PairSource;
use crate::report::Format;

/// Chip-firing on (L, M) pairs: enumeration, duality, frackets and
/// signed-graph sweeps in exact arithmetic.
///
/// Pair files are JSON objects {"L": [[..]], "M": [[..]]} with integer
/// entries. Graph files are either edge lists (a header "n <count> sink <id>",
/// then one "u v +" or "u v -" line per edge, '#' starts a comment) or JSON
/// {"n": 4, "sink": 3, "edges": [[0, 1, "-"], ...]}.
#[derive(Debug, Parser)]
#[command(name = "chipfire", version)]
struct Cli {
    #[command(flatten)]
    source: PairSource,
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest number of classes or patterns any sweep may enumerate
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that M is an M-matrix and summarize it
    CheckMmatrix,
    /// Print L, M, LM^-1, ML^-1, determinants and c_max
    ShowPair,
    /// List superstable or critical configurations, one per class of K(L)
    Enumerate(EnumerateArgs),
    /// Apply the duality map to every superstable (or its inverse to every critical)
    Duality(DualityArgs),
    /// Superstables of M fixed by the involution
    FixedPoints(FixedPointArgs),
    /// Fracket partition of K(L) or K(M)
    Frackets(FracketArgs),
    /// Invariant factors of K(L) and K(M)
    Group,
    /// Sweep all sign patterns of a complete graph or cycle
    FamilyScan(FamilyScanArgs),
    /// Run every reference criterion and print a pass/fail matrix
    #[command(alias = "paper-check")]
    ReferenceCheck(ReferenceCheckArgs),
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring threads")?;
    }
    let report = match &cli.command {
        Command::CheckMmatrix => check_mmatrix(&cli.source, cli.cap)?,
        Command::ShowPair => show_pair(&cli.source.load(cli.cap)?)?,
        Command::Enumerate(a) => enumerate(&cli.source.load(cli.cap)?, a)?,
        Command::Duality(a) => duality(&cli.source.load(cli.cap)?, a)?,
        Command::FixedPoints(a) => fixed_points(&cli.source.load(cli.cap)?, a)?,
        Command::Frackets(a) => frackets(&cli.source.load(cli.cap)?, a)?,
        Command::Group => group(&cli.source.load(cli.cap)?)?,
        Command::FamilyScan(a) => family_scan(a, cli.cap)?,
        Command::ReferenceCheck(a) => reference_check(a)?,
    };
    let text = report.render(cli.format)?;
    match &cli.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(report.ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
