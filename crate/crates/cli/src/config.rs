use std::path::PathBuf;

use clap::{Args, ValueEnum};
use confined_hydrogen::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Options shared by every subcommand.
#[derive(Clone, Debug, Args)]
pub struct RunConfig {
    /// Significant digits of every printed number.
    #[arg(long, global = true, default_value_t = 10)]
    pub digits: usize,

    /// Number of basis functions N in the Ritz solver.
    #[arg(long, global = true, default_value_t = 40)]
    pub basis_size: usize,

    /// Starting binary precision of floating-point stages.
    #[arg(long, global = true, env = "CHBOX_PRECISION_BITS", default_value_t = 256)]
    pub precision_bits: usize,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

pub const MIN_BASIS_SIZE: usize = 5;

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.validate_with_min_basis(MIN_BASIS_SIZE)
    }

    /// `verify` runs with deliberately tiny bases, so the basis floor is
    /// supplied by the caller.
    pub fn validate_with_min_basis(&self, min_basis: usize) -> Result<()> {
        if self.digits < 1 {
            return Err(Error::InvalidArgument("--digits must be at least 1".into()));
        }
        if self.basis_size < min_basis {
            return Err(Error::InvalidArgument(format!("--basis-size must be at least {min_basis}")));
        }
        if self.precision_bits < 64 {
            return Err(Error::InvalidArgument("--precision-bits must be at least 64".into()));
        }
        Ok(())
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { digits: 10, basis_size: 40, precision_bits: 256, out: None, format: Format::Csv }
    }
}

/// Comma-separated integers and inclusive ranges: `0,2,5..8`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexList(pub Vec<u32>);

impl std::str::FromStr for IndexList {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        parse_list(s).map(IndexList)
    }
}

fn parse_list(s: &str) -> std::result::Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once("..") {
            Some((a, b)) => {
                let a: u32 = a.parse().map_err(|_| format!("bad range start in {part:?}"))?;
                let b: u32 = b.trim_start_matches('=').parse().map_err(|_| format!("bad range end in {part:?}"))?;
                if a > b {
                    return Err(format!("empty range {part:?}"));
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| format!("not a non-negative integer: {part:?}"))?),
        }
    }
    if out.is_empty() {
        return Err("empty list".into());
    }
    Ok(out)
}
