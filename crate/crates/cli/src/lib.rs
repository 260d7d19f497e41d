//! `wban`: report generator over the body-area-network models.
//!
//! The binary is a thin shell: [`args`] declares the flags, [`commands`]
//! turns them into model calls and rows, [`report`] renders rows in the
//! three output formats, and [`reproduce`]/[`expected`] recheck the shipped
//! reference figures. Everything here is also callable as a library so the
//! integration tests can drive commands without spawning processes.

use std::fs;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;

use wban_model::{default_catalog, load_catalog, Catalog};

pub mod args;
pub mod commands;
pub mod expected;
pub mod report;
pub mod reproduce;

use args::{Cli, Command, SweepCommand};
use report::{EvalView, Format};

/// Parse the real command line, execute, and map the result onto the exit
/// contract: 0 success, 1 invalid input, 2 reproduction diff failure.
pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version arrive as "errors" but are successes.
            let kind = e.kind();
            let _ = e.print();
            return if kind == ErrorKind::DisplayHelp || kind == ErrorKind::DisplayVersion {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match execute(&cli) {
        Ok(outcome) => match deliver(&cli, &outcome.text) {
            Ok(()) if outcome.reproduction_failed => ExitCode::from(2),
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// A rendered report plus whether a reproduction run found diffs.
pub struct Outcome {
    pub text: String,
    pub reproduction_failed: bool,
}

/// Execute one parsed command against the configured catalog.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let catalog = load_configured_catalog(cli)?;
    let format = Format::from(cli.format);
    match &cli.command {
        Command::Energy(a) => plain(render_rows(
            &commands::eval_rows(&catalog, a)?,
            format,
            |rows| report::eval_table(rows, EvalView::Energy),
        )?),
        Command::Storage(a) => plain(render_rows(
            &commands::eval_rows(&catalog, a)?,
            format,
            |rows| report::eval_table(rows, EvalView::Storage),
        )?),
        Command::Lifetime(a) => plain(render_rows(
            &commands::eval_rows(&catalog, a)?,
            format,
            |rows| report::eval_table(rows, EvalView::Lifetime),
        )?),
        Command::Sweep(sweep) => match &sweep.grid {
            SweepCommand::Arrhythmia(a) => plain(render_rows(
                &commands::arrhythmia_rows(&catalog, a)?,
                format,
                report::arrhythmia_table,
            )?),
            SweepCommand::Compression(a) => plain(render_rows(
                &commands::compression_rows(&catalog, a)?,
                format,
                report::compression_table,
            )?),
        },
        Command::Schemes => plain(render_rows(
            &commands::qualitative_rows(),
            format,
            report::qualitative_table,
        )?),
        Command::Reproduce(a) => {
            let tolerance = a
                .tolerance
                .as_deref()
                .map(parse_tolerance_percent)
                .transpose()?;
            let rep = reproduce::run(&catalog, tolerance)?;
            let text = match format {
                Format::Table => rep.to_table(),
                Format::Csv => report::to_csv(&rep.cells)?,
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&rep)?),
            };
            Ok(Outcome {
                text,
                reproduction_failed: !rep.all_passed(),
            })
        }
    }
}

fn plain(text: String) -> Result<Outcome> {
    Ok(Outcome {
        text,
        reproduction_failed: false,
    })
}

fn load_configured_catalog(cli: &Cli) -> Result<Catalog> {
    match &cli.config {
        Some(path) => load_catalog(path)
            .with_context(|| format!("loading config {}", path.display())),
        None => Ok(default_catalog()),
    }
}

fn render_rows<T: Serialize>(
    rows: &[T],
    format: Format,
    table: impl Fn(&[T]) -> String,
) -> Result<String> {
    match format {
        Format::Table => Ok(table(rows)),
        Format::Csv => report::to_csv(rows),
        Format::Json => report::to_json(rows),
    }
}

/// Accept "1", "0.5", or "0.5%".
fn parse_tolerance_percent(s: &str) -> Result<f64> {
    let trimmed = s.trim().trim_end_matches('%').trim();
    let pct: f64 = trimmed
        .parse()
        .with_context(|| format!("--tolerance takes a percentage, not {s:?}"))?;
    if pct.is_nan() || pct <= 0.0 {
        bail!("--tolerance must be a positive percentage, not {s:?}");
    }
    Ok(pct)
}

fn deliver(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing report to {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
