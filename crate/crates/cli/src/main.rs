//! `nonrep`: generate and check nonrepetitive sequences and tree colorings.
//!
//! Exit codes: 0 success or clean input, 1 a violation was found, 2 usage
//! or input error, 3 a search stopped on its budget or on Ctrl-C (the
//! partial report is still written).

mod output;
mod seq;
mod tree;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::atomic::Ordering;
use std::time::Duration;

use clap::{Parser, Subcommand};
use nonrep::control::SearchControl;
use nonrep::table::{pi_table, table_tsv, TableOptions};

use output::{Format, Output};

#[derive(Debug, Parser)]
#[command(
    name = "nonrep",
    version,
    about = "Nonrepetitive sequences and tree colorings"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// With --out, also print the report
    #[arg(long, global = true, requires = "out")]
    tee: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sequences: generate, check, longest k-special
    #[command(subcommand)]
    Seq(seq::SeqCommand),
    /// Tree colorings: derive, verify, exact search, constructions
    #[command(subcommand)]
    Tree(tree::TreeCommand),
    /// Bounds on the Thue chromatic index of T(k,h) as TSV
    Table {
        #[arg(long, default_value_t = 5)]
        max_k: usize,
        #[arg(long, default_value_t = 6)]
        max_h: usize,
        /// Search seconds per cell (0 disables search), or `long`
        #[arg(long, default_value = "60")]
        budget: Budget,
    },
}

/// A time limit in seconds, or `long` for none.
#[derive(Debug, Clone, Copy)]
pub struct Budget(Option<Duration>);

impl Budget {
    pub fn duration(self) -> Option<Duration> {
        self.0
    }
}

impl FromStr for Budget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "long" {
            return Ok(Budget(None));
        }
        s.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite() && *x >= 0.0)
            .map(|x| Budget(Some(Duration::from_secs_f64(x))))
            .ok_or_else(|| format!("'{s}' is neither a number of seconds nor 'long'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Violation = 1,
    Budget = 3,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(nonrep::Error),
    Io(std::io::Error),
}

impl From<nonrep::Error> for CliError {
    fn from(e: nonrep::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

fn run(cli: &Cli, control: &SearchControl) -> Result<Exit, CliError> {
    let out = Output {
        format: cli.format,
        path: cli.out.clone(),
        tee: cli.tee,
    };
    match &cli.command {
        Command::Seq(cmd) => seq::run(cmd, &out, control),
        Command::Tree(cmd) => tree::run(cmd, &out, control),
        Command::Table {
            max_k,
            max_h,
            budget,
        } => {
            let cells = pi_table(&TableOptions {
                max_k: *max_k,
                max_h: *max_h,
                budget: budget.duration(),
                control: control.clone(),
            })?;
            out.report(
                || table_tsv(&cells),
                &serde_json::to_value(&cells).expect("cells serialize"),
            )?;
            Ok(if control.should_stop() {
                Exit::Budget
            } else {
                Exit::Ok
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let control = SearchControl::new();
    let flag = control.cancel_flag();
    // best effort: without a handler Ctrl-C simply kills the process
    let _ = ctrlc::set_handler(move || flag.store(true, Ordering::Relaxed));
    match run(&cli, &control) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
