//! Drivers built on the Ritz solver and the polynomial solutions: critical
//! couplings, level crossings, convergence of truncation roots and sweeps.

pub mod bessel;
mod conjecture;
mod critical;
mod crossing;
mod sweep;

pub use conjecture::{
    conjecture1_studies, conjecture1_study, conjecture1_study_with, GapRow, GapStudy,
};
pub use critical::{
    critical_beta, critical_beta_oracle, critical_betas, CriticalMethod, CriticalValue,
    BASIS_STEP, MAX_CRITICAL_BASIS,
};
pub use crossing::{find_crossing, CrossingPair, CrossingRecord};
pub use sweep::{beta_grid, energy_sweep, Marker, SweepColumn, SweepOptions, SweepTable};
