use dashu_base::Sign;

use crate::error::{Error, Result};
use crate::exact::{float_to_rational, format_rational, BigFloat};
use crate::polysol::polysol_roots;
use crate::rrm::DEFAULT_BASIS_SIZE;

use super::critical::{critical_beta, CriticalValue};

/// One row of the gap table: `β_l^{(ν,n)} − β^c_{nl}` and its natural log.
#[derive(Clone, Debug)]
pub struct GapRow {
    pub nu: u32,
    pub beta_nu: BigFloat,
    pub gap: BigFloat,
    pub ln_gap: BigFloat,
}

/// Approach of the truncation roots with `n` nodes to the critical coupling.
#[derive(Clone, Debug)]
pub struct GapStudy {
    pub l: u32,
    pub n: u32,
    pub critical: CriticalValue,
    pub rows: Vec<GapRow>,
}

/// Gaps `β_l^{(ν,n)} − β^c_{nl}` for each `ν` in `nu_list` (ascending, `ν ≥ n`).
///
/// A gap that is not positive, or that fails to shrink as `ν` grows, is a
/// [`Error::ConjectureViolation`].
pub fn conjecture1_study(l: u32, n: u32, nu_list: &[u32], digits: usize) -> Result<GapStudy> {
    let critical = critical_beta(n, l, digits, DEFAULT_BASIS_SIZE)?;
    conjecture1_study_with(l, n, nu_list, digits, critical)
}

/// As [`conjecture1_study`], with the critical value supplied by the caller.
pub fn conjecture1_study_with(
    l: u32,
    n: u32,
    nu_list: &[u32],
    digits: usize,
    critical: CriticalValue,
) -> Result<GapStudy> {
    if critical.n != n {
        return Err(Error::InvalidArgument(format!(
            "critical value for n = {} supplied to a study of n = {n}",
            critical.n
        )));
    }
    Ok(conjecture1_studies(l, nu_list, digits, vec![critical])?.swap_remove(0))
}

/// Gap tables for several node counts at once, one per supplied critical
/// value (all with angular momentum `l`). Truncation roots are computed once
/// per `ν`.
pub fn conjecture1_studies(
    l: u32,
    nu_list: &[u32],
    digits: usize,
    criticals: Vec<CriticalValue>,
) -> Result<Vec<GapStudy>> {
    if nu_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("nu values must be strictly ascending".into()));
    }
    if let Some(c) = criticals.iter().find(|c| c.l != l) {
        return Err(Error::InvalidArgument(format!(
            "critical value for l = {} supplied to a study of l = {l}",
            c.l
        )));
    }
    let n_max = criticals.iter().map(|c| c.n).max().unwrap_or(0);
    if let Some(&nu) = nu_list.iter().find(|&&nu| nu < n_max) {
        return Err(Error::InvalidArgument(format!(
            "a degree-{nu} polynomial has no solution with {n_max} nodes"
        )));
    }
    let mut studies: Vec<GapStudy> =
        criticals.into_iter().map(|c| GapStudy { l, n: c.n, critical: c, rows: Vec::new() }).collect();
    for &nu in nu_list {
        let roots = polysol_roots(l, nu, digits)?;
        for study in &mut studies {
            let n = study.n;
            let beta_nu = roots[n as usize].beta_root.clone();
            let gap = &beta_nu - &study.critical.beta_c;
            if gap.sign() != Sign::Positive || gap.repr().is_zero() {
                return Err(Error::ConjectureViolation(format!(
                    "(l = {l}, n = {n}, nu = {nu}): truncation root does not exceed the critical value, gap = {}",
                    format_rational(&float_to_rational(&gap), digits)
                )));
            }
            if let Some(prev) = study.rows.last() {
                if gap >= prev.gap {
                    return Err(Error::ConjectureViolation(format!(
                        "(l = {l}, n = {n}): gap does not decrease from nu = {} to nu = {nu}",
                        prev.nu
                    )));
                }
            }
            let ln_gap = gap.ln();
            study.rows.push(GapRow { nu, beta_nu, gap, ln_gap });
        }
    }
    Ok(studies)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::critical_beta_oracle;

    #[test]
    fn gaps_shrink_towards_critical_value() {
        let critical = critical_beta_oracle(0, 0, 8).unwrap();
        let study = conjecture1_study_with(0, 0, &[1, 2, 4, 8], 8, critical).unwrap();
        assert_eq!(study.rows.len(), 4);
        assert!(study.rows.windows(2).all(|w| w[1].gap < w[0].gap));
        let first = &study.rows[0];
        assert_eq!(first.ln_gap, first.gap.ln());
    }

    #[test]
    fn rejects_bad_lists_and_mismatched_criticals() {
        let c = || critical_beta_oracle(1, 0, 6).unwrap();
        assert!(conjecture1_study_with(0, 1, &[3, 2], 6, c()).is_err());
        assert!(conjecture1_study_with(0, 1, &[0, 2], 6, c()).is_err());
        assert!(conjecture1_study_with(0, 0, &[2, 3], 6, c()).is_err());
        assert!(conjecture1_study_with(1, 1, &[2, 3], 6, c()).is_err());
    }

    #[test]
    fn wrong_critical_value_is_a_violation() {
        let mut c = critical_beta_oracle(0, 0, 6).unwrap();
        c.beta_c = crate::exact::float_from_int(3, 64);
        let err = conjecture1_study_with(0, 0, &[2, 3], 6, c).unwrap_err();
        assert!(matches!(err, Error::ConjectureViolation(_)), "{err}");
    }
}
