use dashu_ratio::RBig;

use crate::error::{Error, Result};
use crate::exact::{rat, BigFloat, ExactScalar, DEFAULT_PRECISION_BITS};
use crate::polysol::polysol_roots;
use crate::rrm::{BasisSpec, Certification, RitzSolver};

/// Energies of level `(n, l)` along the sweep grid.
#[derive(Clone, Debug)]
pub struct SweepColumn {
    pub n: u32,
    pub l: u32,
    pub values: Vec<BigFloat>,
}

/// A closed-form ground state `(β_l^{(ν,0)}, E_l^{(ν,0)})`.
#[derive(Clone, Debug)]
pub struct Marker {
    pub l: u32,
    pub nu: u32,
    pub beta: BigFloat,
    pub energy: BigFloat,
}

/// Ritz energies of the lowest levels of several `l` on a grid of couplings.
#[derive(Clone, Debug)]
pub struct SweepTable {
    pub l_set: Vec<u32>,
    pub betas: Vec<ExactScalar>,
    pub columns: Vec<SweepColumn>,
    pub markers: Vec<Marker>,
}

impl SweepTable {
    /// Every column strictly decreasing along the grid.
    pub fn is_monotone(&self) -> bool {
        self.columns.iter().all(|c| c.values.windows(2).all(|w| w[1] < w[0]))
    }

    pub fn column(&self, n: u32, l: u32) -> Option<&SweepColumn> {
        self.columns.iter().find(|c| c.n == n && c.l == l)
    }
}

/// Options of [`energy_sweep`] beyond the grid itself.
#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    pub levels: usize,
    pub basis_size: usize,
    pub digits: usize,
    pub precision_bits: usize,
    pub certification: Certification,
    /// Closed-form markers are listed for `ν = 0 … marker_nu_max`.
    pub marker_nu_max: u32,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            levels: 4,
            basis_size: crate::rrm::DEFAULT_BASIS_SIZE,
            digits: crate::exact::DEFAULT_DIGITS,
            precision_bits: DEFAULT_PRECISION_BITS,
            certification: Certification::Exact,
            marker_nu_max: 6,
        }
    }
}

/// The grid `0, step, 2·step, …` up to and including `beta_max`.
pub fn beta_grid(beta_max: &ExactScalar, step: &ExactScalar) -> Result<Vec<ExactScalar>> {
    if *step <= RBig::ZERO {
        return Err(Error::InvalidArgument(format!("step must be positive, got {step}")));
    }
    if *beta_max < RBig::ZERO {
        return Err(Error::InvalidArgument(format!("beta_max must be non-negative, got {beta_max}")));
    }
    let count: usize = (beta_max / step)
        .floor()
        .try_into()
        .map_err(|_| Error::InvalidArgument("grid too large".into()))?;
    Ok((0..=count).map(|k| step * rat(k as i64, 1)).collect())
}

/// Lowest `levels` energies for each `l` at each grid coupling, with the
/// closed-form ground states of each `l` inside the range as markers.
pub fn energy_sweep(
    l_set: &[u32],
    beta_max: &ExactScalar,
    step: &ExactScalar,
    options: SweepOptions,
) -> Result<SweepTable> {
    let betas = beta_grid(beta_max, step)?;
    let mut columns = Vec::new();
    let mut markers = Vec::new();
    for &l in l_set {
        let basis = BasisSpec::new(l, RBig::ONE, options.basis_size)?;
        let solver = RitzSolver::new(&basis, options.digits, options.precision_bits)?;
        let mut per_level: Vec<Vec<BigFloat>> = vec![Vec::with_capacity(betas.len()); options.levels];
        for beta in &betas {
            let spectrum = solver.spectrum(beta, options.levels, options.certification)?;
            for (col, v) in per_level.iter_mut().zip(spectrum.values) {
                col.push(v);
            }
        }
        columns.extend(
            per_level
                .into_iter()
                .enumerate()
                .map(|(n, values)| SweepColumn { n: n as u32, l, values }),
        );
        for nu in 0..=options.marker_nu_max {
            let ground = polysol_roots(l, nu, options.digits)?.swap_remove(0);
            // The isolating interval decides, so exact roots at beta_max count.
            if ground.bracket.lo <= *beta_max {
                markers.push(Marker { l, nu, beta: ground.beta_root, energy: ground.energy });
            }
        }
    }
    Ok(SweepTable { l_set: l_set.to_vec(), betas, columns, markers })
}
