//! Command-line front end for the `fdde` library.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod presets;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::commands::DEFAULT_H_LIST;
use crate::config::{Experiment, Overrides};
pub use crate::error::CliError;
use crate::output::{emit, write_atomic};
use crate::presets::RunKind;

#[derive(Debug, Parser)]
#[command(
    name = "fdde",
    version,
    about = "Fractional delay differential equations: closed forms and solvers"
)]
pub struct Cli {
    /// Experiment description (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file (directory for `figure`); stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Step size override.
    #[arg(long = "h", global = true)]
    pub h: Option<f64>,
    /// Final time override.
    #[arg(long = "T", global = true)]
    pub t_end: Option<f64>,
    /// Fractional order override.
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    /// `caputo` or `phitau`.
    #[arg(long, global = true)]
    pub operator: Option<String>,
    /// `auto`, `pi`, `gl`, `pi-corrective` or `exact`.
    #[arg(long, global = true)]
    pub method: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form solution on the output grid.
    Exact,
    /// Numerical solution.
    Solve,
    /// Caputo vs history-aware closed forms (ramp history).
    Compare,
    /// Error table over a list of step sizes.
    Converge {
        /// Comma-separated step sizes, largest first.
        #[arg(long = "h-list", value_delimiter = ',')]
        h_list: Option<Vec<f64>>,
    },
    /// Regenerate the data behind a figure (1..5).
    Figure { number: u8 },
}

impl Cli {
    fn overrides(&self) -> Overrides {
        Overrides {
            h: self.h,
            t_end: self.t_end,
            alpha: self.alpha,
            operator: self.operator.clone(),
            method: self.method.clone(),
        }
    }

    fn experiment(&self) -> Result<Experiment, CliError> {
        let Some(path) = &self.config else {
            return Err(CliError::Config("--config is required".into()));
        };
        Experiment::load(path, &self.overrides())
    }
}

fn out_path(cli: &Cli, exp: &Experiment) -> Option<PathBuf> {
    cli.out
        .clone()
        .or_else(|| exp.config.output.as_ref().map(PathBuf::from))
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Exact => {
            let exp = cli.experiment()?;
            let table = commands::exact(&exp)?;
            emit(out_path(cli, &exp).as_deref(), |w| table.write(w))
        }
        Command::Solve => {
            let exp = cli.experiment()?;
            let table = commands::solve_table(&exp)?;
            emit(out_path(cli, &exp).as_deref(), |w| table.write(w))
        }
        Command::Compare => {
            let exp = cli.experiment()?;
            let (table, worst) = commands::compare(&exp)?;
            let out = out_path(cli, &exp);
            emit(out.as_deref(), |w| table.write(w))?;
            let line = format!("max |(y_hat - y) - J(corrective)| = {worst:.3e}");
            if out.is_some() {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
            Ok(())
        }
        Command::Converge { h_list } => {
            let exp = cli.experiment()?;
            let list = h_list.clone().unwrap_or_else(|| DEFAULT_H_LIST.to_vec());
            let (rows, reference) = commands::converge(&exp, &list)?;
            eprintln!("reference: {reference}");
            emit(out_path(cli, &exp).as_deref(), |w| {
                commands::write_convergence(w, &rows)
            })
        }
        Command::Figure { number } => figure(cli, *number),
    }
}

fn figure(cli: &Cli, number: u8) -> Result<(), CliError> {
    let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("figures"));
    for written in write_figure(number, &dir, &cli.overrides())? {
        match written.discrepancy {
            Some(d) => println!(
                "{}: max |(y_hat - y) - J(corrective)| = {d:.3e}",
                written.path.display()
            ),
            None => println!("{}", written.path.display()),
        }
    }
    Ok(())
}

/// A CSV produced by a figure preset.
#[derive(Debug, Clone)]
pub struct FigureFile {
    pub path: PathBuf,
    /// Compare runs only: the identity mismatch.
    pub discrepancy: Option<f64>,
}

/// Runs every entry of preset `number`, writing `<name>.csv` into `dir`.
pub fn write_figure(number: u8, dir: &Path, overrides: &Overrides) -> Result<Vec<FigureFile>, CliError> {
    let preset = presets::preset(number)?;
    let mut written = Vec::new();
    for run in preset.runs {
        let exp = Experiment::new(run.config, PathBuf::new(), overrides)?;
        let path = dir.join(format!("{}.csv", run.name));
        let mut discrepancy = None;
        let table = match run.command {
            RunKind::Exact => commands::exact(&exp)?,
            RunKind::Solve => commands::solve_table(&exp)?,
            RunKind::Pair => commands::pair(&exp)?,
            RunKind::Euler => commands::euler(&exp)?,
            RunKind::Compare => {
                let (table, worst) = commands::compare(&exp)?;
                discrepancy = Some(worst);
                table
            }
        };
        write_table_to(&path, &table)?;
        written.push(FigureFile { path, discrepancy });
    }
    Ok(written)
}

fn write_table_to(path: &Path, table: &commands::Table) -> Result<(), CliError> {
    write_atomic(path, |w| table.write(w))
}
