use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{
    float_from_rational, float_to_rational, pow10, BigFloat, ExactScalar, DEFAULT_PRECISION_BITS,
};
use crate::rrm::{
    assemble, certify_bracket, lowest_eigenvalues, probes_around, working_bits, BasisSpec,
    Reduction,
};

use super::bessel;

/// Largest basis tried while waiting for a critical value to stabilize.
pub const MAX_CRITICAL_BASIS: usize = 96;

/// Basis-size increment between convergence checks.
pub const BASIS_STEP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriticalMethod {
    InertiaBisection,
    BesselOracle,
}

impl fmt::Display for CriticalMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CriticalMethod::InertiaBisection => "inertia-bisection",
            CriticalMethod::BesselOracle => "bessel-oracle",
        })
    }
}

/// The coupling at which level `(n, l)` of the unit box reaches zero energy.
#[derive(Clone, Debug)]
pub struct CriticalValue {
    pub n: u32,
    pub l: u32,
    pub beta_c: BigFloat,
    pub digits: usize,
    pub method: CriticalMethod,
    /// Basis size of the accepted value (zero for the oracle).
    pub basis_size: usize,
    /// Exact bracket `[lo, hi)` proven to contain the Ritz value of `β^c`.
    pub bracket: Option<(ExactScalar, ExactScalar)>,
}

/// Critical couplings of one basis: eigenvalues of the pencil `(T, C)`,
/// since `T − βC` has exactly as many negative eigenvalues as there are
/// Ritz values below zero.
fn pencil_values(
    l: u32,
    size: usize,
    count: usize,
    digits: usize,
    precision_bits: usize,
) -> Result<Vec<(BigFloat, (ExactScalar, ExactScalar))>> {
    let basis = BasisSpec::new(l, crate::exact::rat(1, 1), size)?;
    let m = assemble(&basis);
    let mut bits = working_bits(&basis, digits, precision_bits);
    for _ in 0..4 {
        let reduction = match Reduction::new(&m.c, &[&m.t], bits) {
            Ok(r) => r,
            Err(Error::NotPositiveDefinite(_)) => {
                bits *= 2;
                continue;
            }
            Err(e) => return Err(e),
        };
        let values = lowest_eigenvalues(&reduction.k[0], count, digits);
        let mut out = Vec::with_capacity(count);
        for (n, v) in values.into_iter().enumerate() {
            let (lo, hi) = probes_around(&v, digits);
            if !certify_bracket(&m.t, &m.c, n, &lo, &hi)? {
                break;
            }
            out.push((v, (lo, hi)));
        }
        if out.len() == count {
            return Ok(out);
        }
        bits *= 2;
    }
    Err(Error::PrecisionExhausted { what: format!("critical couplings for l = {l}"), bits })
}

/// `β^c_{nl}` for `n = 0 … n_max`, growing the basis from `size` in steps of
/// eight until two consecutive sizes agree to `digits + 1` digits.
pub fn critical_betas(
    l: u32,
    n_max: u32,
    digits: usize,
    size: usize,
    precision_bits: usize,
) -> Result<Vec<CriticalValue>> {
    if digits == 0 {
        return Err(Error::InvalidArgument("digits must be at least 1".into()));
    }
    let count = n_max as usize + 1;
    if size < count {
        return Err(Error::InvalidArgument(format!(
            "basis size {size} cannot resolve {count} critical values"
        )));
    }
    let tol = pow10(-(digits as i64) - 1);
    let mut previous = pencil_values(l, size, count, digits, precision_bits)?;
    let mut n_basis = size;
    while n_basis + BASIS_STEP <= MAX_CRITICAL_BASIS {
        let next_size = n_basis + BASIS_STEP;
        let current = pencil_values(l, next_size, count, digits, precision_bits)?;
        let stable = previous.iter().zip(&current).all(|((a, _), (b, _))| {
            let (a, b) = (float_to_rational(a), float_to_rational(b));
            let scale = if b.clone() > ExactScalar::ONE { b.clone() } else { ExactScalar::ONE };
            bessel::within(&a, &b, &(&tol * scale))
        });
        previous = current;
        n_basis = next_size;
        if stable {
            return Ok(previous
                .into_iter()
                .enumerate()
                .map(|(n, (beta_c, bracket))| CriticalValue {
                    n: n as u32,
                    l,
                    beta_c,
                    digits,
                    method: CriticalMethod::InertiaBisection,
                    basis_size: n_basis,
                    bracket: Some(bracket),
                })
                .collect());
        }
    }
    Err(Error::NotConverged(format!(
        "critical couplings for l = {l} not confirmed by two bases of size at most {MAX_CRITICAL_BASIS}"
    )))
}

/// `β^c_{nl}` by certified inertia bisection with basis escalation.
pub fn critical_beta(n: u32, l: u32, digits: usize, size: usize) -> Result<CriticalValue> {
    let mut all = critical_betas(l, n, digits, size, DEFAULT_PRECISION_BITS)?;
    Ok(all.pop().expect("n_max + 1 values"))
}

/// `β^c_{nl} = j²_{2l+1, n+1}/8` from the Bessel series.
pub fn critical_beta_oracle(n: u32, l: u32, digits: usize) -> Result<CriticalValue> {
    let values = bessel::critical_betas(l, n as usize + 1, digits + 2)?;
    let beta = values.last().expect("n + 1 values");
    Ok(CriticalValue {
        n,
        l,
        beta_c: float_from_rational(beta, crate::exact::working_bits_for_digits(digits + 2)),
        digits,
        method: CriticalMethod::BesselOracle,
        basis_size: 0,
        bracket: None,
    })
}
