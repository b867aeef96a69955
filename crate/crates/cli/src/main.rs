//! `gkz`: secondary fans, SOD multiplicities and theorem checks for toric
//! GIT problems given as JSON files.

mod commands;
mod input;
mod plot;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use crate::input::ProblemFile;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(m: impl Into<String>) -> Self {
        CliError { code: 2, message: m.into() }
    }

    pub fn query(m: impl Into<String>) -> Self {
        CliError { code: 3, message: m.into() }
    }
}

impl From<gkz_core::Error> for CliError {
    fn from(e: gkz_core::Error) -> Self {
        match e {
            gkz_core::Error::Input(m) => CliError::input(m),
            gkz_core::Error::Query(m) => CliError::query(m),
            e @ gkz_core::Error::Internal(_) => CliError::query(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "gkz", version, about = "Secondary fans and SOD multiplicities of toric GIT problems")]
struct Cli {
    /// Problem file ({"weights": …} or {"points": …}); stdin when omitted.
    #[arg(short, long, global = true)]
    input: Option<PathBuf>,
    /// Write the JSON report to this path ("-" for stdout).
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Suppress the human-readable report.
    #[arg(short, long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Chambers and walls of the secondary fan.
    Fan {
        /// Write plot data (k = 2 rays, k = 3 slice segments) to PATH.
        #[arg(long, value_name = "PATH")]
        plot: Option<PathBuf>,
        /// Slicing plane for k = 3 plots, e.g. "x+y+z=1".
        #[arg(long, default_value = "x+y+z=1")]
        slice: String,
    },
    /// Minimal faces with the ranks of their Higgs minimal phases.
    Faces,
    /// Multiplicities n_F for the chamber containing a point.
    Sod {
        /// Stability point "c1,…,ck" (integers or p/q).
        #[arg(long, allow_hyphen_values = true)]
        chamber: String,
    },
    /// Walls with their multiplicity rows.
    Walls,
    /// Straight-line run from a point towards the minimal chamber.
    Run {
        #[arg(long, allow_hyphen_values = true)]
        chamber: String,
    },
    /// Tropical intersection of a transverse direction with the walls.
    Tropical {
        /// Integer direction "v1,…,vk".
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
        #[arg(long)]
        wall: Option<usize>,
    },
    /// Compare the A-side and B-side decorated complexes (CY problems).
    Verify,
    /// Full JSON dump: fan, faces, walls and per-chamber tables.
    Export,
}

fn write_json(path: &Path, v: &Value) -> Result<(), CliError> {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    if path == Path::new("-") {
        print!("{s}");
        Ok(())
    } else {
        std::fs::write(path, s).map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let file = ProblemFile::read(cli.input.as_deref())?;
    let p = file.problem()?;
    let report = match &cli.command {
        Command::Fan { plot, slice } => {
            let (r, data) = commands::fan(&p, plot.as_ref().map(|_| slice.as_str()))?;
            if let (Some(path), Some(d)) = (plot, data) {
                write_json(path, &d)?;
            }
            r
        }
        Command::Faces => commands::faces(&p)?,
        Command::Sod { chamber } => commands::sod(&p, chamber)?,
        Command::Walls => commands::walls(&p)?,
        Command::Run { chamber } => commands::run(&p, chamber)?,
        Command::Tropical { direction, wall } => commands::tropical(&p, direction, *wall)?,
        Command::Verify => commands::verify(&p)?,
        Command::Export => {
            let r = commands::export(&p, file.name.as_deref())?;
            if cli.json.is_none() {
                write_json(Path::new("-"), &r.json)?;
                return Ok(r.status);
            }
            r
        }
    };
    if !cli.quiet {
        print!("{}", report.text);
    }
    if let Some(path) = &cli.json {
        write_json(path, &report.json)?;
    }
    Ok(report.status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
