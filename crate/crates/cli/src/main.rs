use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cc4_cli::app::{self, CliError, MapRequest};
use cc4_cli::settings::{parse_grid, parse_masses};

/// Planar central configurations of the four-body problem.
#[derive(Debug, Parser)]
#[command(name = "cc4", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Four positive masses, `a,b,c,d`.
    #[arg(long, value_parser = parse_masses, allow_hyphen_values = true)]
    masses: [f64; 4],
    /// JSON file with solver setting overrides.
    #[arg(long)]
    settings: Option<PathBuf>,
    /// Multistart grid `NxM` (θ × φ).
    #[arg(long, value_parser = parse_grid)]
    grid: Option<(usize, usize)>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Find all configurations reachable from the multistart grid.
    Solve {
        #[command(flatten)]
        common: Common,
        /// Write the JSON document here (`-` for stdout instead of the table).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Symmetric configurations for masses with m3 = m4.
    Kite {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Move an equal pair of masses to positions 3 and 4 first.
        #[arg(long)]
        relabel: bool,
    },
    /// Region map of the hemisphere as CSV and SVG.
    Map {
        #[command(flatten)]
        common: Common,
        /// Output path without extension.
        #[arg(long, default_value = "map")]
        out: PathBuf,
        /// Solve and overlay the solution directions.
        #[arg(long)]
        with_solutions: bool,
    },
    /// Recompute the residuals of a solutions file.
    Verify { file: PathBuf },
    /// Solve the reference mass sets and compare with the bundled solutions.
    Repro {
        /// Directory for the computed documents.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        settings: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Solve { common, out } => {
            let s = app::load_settings(common.settings.as_deref(), common.grid)?;
            app::solve(common.masses, out.as_deref(), &s)
        }
        Command::Kite {
            common,
            out,
            relabel,
        } => {
            let s = app::load_settings(common.settings.as_deref(), common.grid)?;
            app::kite(common.masses, relabel, out.as_deref(), &s)
        }
        Command::Map {
            common,
            out,
            with_solutions,
        } => {
            // --grid sets the map raster here; the solver keeps its own grid.
            let s = app::load_settings(common.settings.as_deref(), None)?;
            app::map(&MapRequest {
                masses: common.masses,
                out: &out,
                grid: common.grid.unwrap_or((64, 128)),
                with_solutions,
                settings: &s,
            })
        }
        Command::Verify { file } => app::verify(&file),
        Command::Repro { out, settings } => {
            let s = app::load_settings(settings.as_deref(), None)?;
            app::repro(out.as_deref(), &s)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
