//! Table and figure datasets.

use confined_hydrogen::analysis::{
    conjecture1_studies, critical_beta_oracle, critical_betas, energy_sweep, SweepOptions,
};
use confined_hydrogen::exact::{rat, ExactScalar};
use confined_hydrogen::model::DimensionlessProblem;
use confined_hydrogen::polysol::polysol_roots;
use confined_hydrogen::rrm::{BasisSpec, Certification, RitzSolver, RitzSpectrum};
use confined_hydrogen::{Error, Result};
use dashu_ratio::RBig;

use crate::config::RunConfig;
use crate::table::{Cell, Table};

fn level_header(first: &str, n_max: u32) -> Vec<String> {
    std::iter::once(first.to_string()).chain((0..=n_max).map(|n| format!("n{n}"))).collect()
}

/// Certified Ritz values of the unit box at coupling `beta`.
pub fn spectrum(l: u32, beta: &ExactScalar, levels: usize, cfg: &RunConfig) -> Result<RitzSpectrum> {
    let problem = DimensionlessProblem::new(l, beta.clone())?;
    let basis = BasisSpec::for_problem(&problem, cfg.basis_size)?;
    RitzSolver::new(&basis, cfg.digits, cfg.precision_bits)?.spectrum(beta, levels, Certification::Exact)
}

/// Truncation roots `β_l^{(ν,n)}`: one row per `ν`, one column per `n`.
/// Cells with `n > ν` are empty.
pub fn table1(l: u32, nu_list: &[u32], n_max: u32, cfg: &RunConfig) -> Result<Table> {
    let mut table = Table::new(level_header("nu", n_max));
    for &nu in nu_list {
        let roots = polysol_roots(l, nu, cfg.digits)?;
        let mut row = vec![Cell::int(nu)];
        row.extend((0..=n_max as usize).map(|n| {
            roots.get(n).map_or(Cell::Empty, |s| Cell::float(&s.beta_root, cfg.digits))
        }));
        table.push(row);
    }
    Ok(table)
}

/// Free-box energies `E_nl(1, 0)` for `l ≤ l_max`, grouped by shell `n + l`.
pub fn table2(l_max: u32, shell_max: u32, cfg: &RunConfig) -> Result<Table> {
    let mut per_l = Vec::new();
    for l in 0..=l_max.min(shell_max) {
        let levels = (shell_max - l + 1) as usize;
        per_l.push(spectrum(l, &RBig::ZERO, levels, cfg)?);
    }
    let mut table = Table::new(["n", "l", "E"]);
    for shell in 0..=shell_max {
        for n in 0..=shell {
            let l = shell - n;
            if l > l_max {
                continue;
            }
            let value = &per_l[l as usize].values[n as usize];
            table.push(vec![Cell::int(n), Cell::int(l), Cell::float(value, cfg.digits)]);
        }
    }
    Ok(table)
}

/// Spectra of `l` and `l + 2` at the truncation coupling `β_l = (l+1)(l+2)`.
pub fn table3(l_set: &[u32], n_max: u32, cfg: &RunConfig) -> Result<Table> {
    let mut header = level_header("beta", n_max);
    header.insert(1, "l".into());
    let mut table = Table::new(header);
    for &l in l_set {
        let beta = rat(((l + 1) * (l + 2)) as i64, 1);
        for ll in [l, l + 2] {
            let s = spectrum(ll, &beta, n_max as usize + 1, cfg)?;
            let mut row = vec![Cell::exact(&beta, cfg.digits), Cell::int(ll)];
            row.extend(s.values.iter().map(|v| Cell::float(v, cfg.digits)));
            table.push(row);
        }
    }
    Ok(table)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum CriticalSource {
    /// Exact inertia counts on the Ritz pencil.
    #[default]
    Inertia,
    /// Squared Bessel zeros.
    Bessel,
}

/// Critical couplings `β^c_{nl}`: one row per `l`, one column per `n`.
pub fn table4(l_max: u32, n_max: u32, source: CriticalSource, cfg: &RunConfig) -> Result<Table> {
    let mut table = Table::new(level_header("l", n_max));
    for l in 0..=l_max {
        let values = match source {
            CriticalSource::Inertia => {
                critical_betas(l, n_max, cfg.digits, cfg.basis_size, cfg.precision_bits)?
            }
            CriticalSource::Bessel => {
                (0..=n_max).map(|n| critical_beta_oracle(n, l, cfg.digits)).collect::<Result<_>>()?
            }
        };
        let mut row = vec![Cell::int(l)];
        row.extend(values.iter().map(|c| Cell::float(&c.beta_c, cfg.digits)));
        table.push(row);
    }
    Ok(table)
}

/// Energies along a coupling grid. Grid rows carry one column per `(n, l)`;
/// each closed-form ground state adds a row with only the marker columns set.
pub fn fig1(
    l_set: &[u32],
    n_max: u32,
    beta_max: &ExactScalar,
    step: &ExactScalar,
    certification: Certification,
    cfg: &RunConfig,
) -> Result<Table> {
    let options = SweepOptions {
        levels: n_max as usize + 1,
        basis_size: cfg.basis_size,
        digits: cfg.digits,
        precision_bits: cfg.precision_bits,
        certification,
        ..SweepOptions::default()
    };
    let sweep = energy_sweep(l_set, beta_max, step, options)?;
    let mut header = vec!["beta".to_string()];
    header.extend(sweep.columns.iter().map(|c| format!("E_n{}_l{}", c.n, c.l)));
    header.extend(["marker_l", "marker_nu", "marker_E"].map(String::from));
    let width = header.len();
    let mut rows: Vec<(ExactScalar, Vec<Cell>)> = Vec::new();
    for (i, beta) in sweep.betas.iter().enumerate() {
        let mut row = vec![Cell::exact(beta, cfg.digits)];
        row.extend(sweep.columns.iter().map(|c| Cell::float(&c.values[i], cfg.digits)));
        row.resize(width, Cell::Empty);
        rows.push((beta.clone(), row));
    }
    for m in &sweep.markers {
        let mut row = vec![Cell::float(&m.beta, cfg.digits)];
        row.resize(width - 3, Cell::Empty);
        row.extend([Cell::int(m.l), Cell::int(m.nu), Cell::float(&m.energy, cfg.digits)]);
        rows.push((confined_hydrogen::exact::float_to_rational(&m.beta), row));
    }
    // Stable: a marker sitting on a grid coupling follows the grid row.
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    let mut table = Table::new(header);
    for (_, row) in rows {
        table.push(row);
    }
    Ok(table)
}

/// Gaps between truncation roots and critical couplings with their natural log.
pub fn fig2(l: u32, n_max: u32, nu_list: &[u32], cfg: &RunConfig) -> Result<Table> {
    if nu_list.iter().any(|&nu| nu < n_max) {
        return Err(Error::InvalidArgument(format!("every nu must be at least n-max = {n_max}")));
    }
    let criticals = critical_betas(l, n_max, cfg.digits, cfg.basis_size, cfg.precision_bits)?;
    let studies = conjecture1_studies(l, nu_list, cfg.digits, criticals)?;
    let mut table = Table::new(["l", "n", "nu", "beta_nu", "beta_c", "gap", "ln_gap"]);
    for study in &studies {
        for row in &study.rows {
            table.push(vec![
                Cell::int(l),
                Cell::int(study.n),
                Cell::int(row.nu),
                Cell::float(&row.beta_nu, cfg.digits),
                Cell::float(&study.critical.beta_c, cfg.digits),
                Cell::float(&row.gap, cfg.digits),
                Cell::float(&row.ln_gap, cfg.digits),
            ]);
        }
    }
    Ok(table)
}
