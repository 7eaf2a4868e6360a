//! `chbox`: tables, figure data and verification for the hydrogen atom in an
//! impenetrable spherical box.
//!
//! Exit status: 0 success, 1 verification failure, 2 invalid arguments,
//! 3 precision or basis escalation exhausted.

mod commands;
mod config;
mod golden;
mod table;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use confined_hydrogen::exact::parse_decimal;
use confined_hydrogen::rrm::Certification;
use confined_hydrogen::Error;

use crate::commands::CriticalSource;
use crate::config::{Format, IndexList, RunConfig};
use crate::table::Table;

#[derive(Debug, Parser)]
#[command(name = "chbox", version, about = "Spectra of the hydrogen atom in an impenetrable spherical box")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Couplings β_l^(ν,n) at which the series solution truncates.
    Table1 {
        #[arg(long, default_value_t = 0)]
        l: u32,
        /// Polynomial degrees, e.g. `5,10,15` or `5..30`.
        #[arg(long, default_value = "5,10,15,20,25,30")]
        nu: IndexList,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
    },
    /// Free-box energies E_nl(1, 0), grouped by n + l.
    Table2 {
        #[arg(long, default_value_t = 6)]
        l_max: u32,
        #[arg(long, default_value_t = 6)]
        shell_max: u32,
    },
    /// Spectra of l and l + 2 at β_l = (l+1)(l+2).
    Table3 {
        #[arg(long, default_value = "0,1,2")]
        l: IndexList,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
    },
    /// Critical couplings β^c_nl at which E_nl(1, β) = 0.
    Table4 {
        #[arg(long, default_value_t = 3)]
        l_max: u32,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = CriticalSource::Inertia)]
        method: CriticalSource,
    },
    /// Lowest energies along a grid of couplings, with closed-form ground states.
    Fig1 {
        #[arg(long, default_value = "0..3")]
        l: IndexList,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        #[arg(long, default_value = "12")]
        beta_max: String,
        #[arg(long, default_value = "1/2")]
        step: String,
        /// Skip the exact inertia certificate of each grid point.
        #[arg(long)]
        uncertified: bool,
    },
    /// Gaps between truncation roots and critical couplings, with ln(gap).
    Fig2 {
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        #[arg(long, default_value = "5..30")]
        nu: IndexList,
    },
    /// Run every invariant suite and golden-table comparison.
    Verify {
        /// Negate an entry of the overlap matrix before its definiteness check.
        #[arg(long)]
        tamper_s: bool,
        /// Run only these suites.
        #[arg(long, value_enum, value_delimiter = ',')]
        suite: Vec<verify::SuiteName>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0} verification checks failed")]
    Verification(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::InvalidArgument(_)) => 2,
            CliError::Core(e) if e.is_resource() => 3,
            _ => 1,
        }
    }
}

fn emit(table: &Table, cfg: &RunConfig) -> std::io::Result<()> {
    let text = match cfg.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = &cli.config;
    if matches!(cli.command, Command::Verify { .. }) {
        cfg.validate_with_min_basis(1)?;
    } else {
        cfg.validate()?;
    }
    let table = match cli.command {
        Command::Table1 { l, nu, n_max } => commands::table1(l, &nu.0, n_max, cfg)?,
        Command::Table2 { l_max, shell_max } => commands::table2(l_max, shell_max, cfg)?,
        Command::Table3 { l, n_max } => commands::table3(&l.0, n_max, cfg)?,
        Command::Table4 { l_max, n_max, method } => commands::table4(l_max, n_max, method, cfg)?,
        Command::Fig1 { l, n_max, beta_max, step, uncertified } => {
            let certification = if uncertified { Certification::Skip } else { Certification::Exact };
            let (beta_max, step) = (parse_decimal(&beta_max)?, parse_decimal(&step)?);
            commands::fig1(&l.0, n_max, &beta_max, &step, certification, cfg)?
        }
        Command::Fig2 { l, n_max, nu } => commands::fig2(l, n_max, &nu.0, cfg)?,
        Command::Verify { tamper_s, suite } => {
            let report = verify::run(cfg, verify::Faults { tamper_s }, &suite);
            emit(&report.table(cfg.digits), cfg)?;
            eprintln!("verify: {} checks, {} failed", report.checks.len(), report.failures());
            return match report.failures() {
                0 => Ok(()),
                n => Err(CliError::Verification(n)),
            };
        }
    };
    emit(&table, cfg)?;
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("chbox: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
