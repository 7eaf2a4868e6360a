use dashu_ratio::RBig;

use crate::error::{Error, Result};
use crate::exact::{
    float_from_rational, format_rational, float_to_rational, pow10, BigFloat, ExactScalar,
    DEFAULT_PRECISION_BITS,
};
use crate::rrm::{abs, BasisSpec, RitzSolver};

/// A coupling at which `E_{n+1,l}` and `E_{n,l+2}` coincide.
#[derive(Clone, Debug)]
pub struct CrossingRecord {
    pub n: u32,
    pub l: u32,
    /// `((n+1, l), (n, l+2))`.
    pub pair: ((u32, u32), (u32, u32)),
    pub beta_star: BigFloat,
    /// Mean of the two energies at `β*`.
    pub shared_energy: BigFloat,
    /// `|E_{n+1,l}(β*) − E_{n,l+2}(β*)|`.
    pub residual: BigFloat,
    pub basis_size: usize,
}

/// The two Ritz solvers whose levels are compared.
pub struct CrossingPair {
    n: u32,
    lower: RitzSolver,
    upper: RitzSolver,
}

impl CrossingPair {
    pub fn new(n: u32, l: u32, digits: usize, size: usize) -> Result<Self> {
        let one = RBig::ONE;
        let lower = RitzSolver::new(&BasisSpec::new(l, one.clone(), size)?, digits, DEFAULT_PRECISION_BITS)?;
        let upper = RitzSolver::new(&BasisSpec::new(l + 2, one, size)?, digits, DEFAULT_PRECISION_BITS)?;
        Ok(Self { n, lower, upper })
    }

    /// `(E_{n+1,l}(β), E_{n,l+2}(β))`.
    pub fn energies(&self, beta: &ExactScalar) -> Result<(BigFloat, BigFloat)> {
        let n = self.n as usize;
        let a = self.lower.approximate_values(beta, n + 2)?.swap_remove(n + 1);
        let b = self.upper.approximate_values(beta, n + 1)?.swap_remove(n);
        Ok((a, b))
    }

    /// `D(β) = E_{n+1,l}(β) − E_{n,l+2}(β)`.
    pub fn difference(&self, beta: &ExactScalar) -> Result<BigFloat> {
        let (a, b) = self.energies(beta)?;
        Ok(a - b)
    }
}

/// Bisection on `D(β)` over `bracket` until its width falls below
/// `10^-(digits+2)·max(1, β)`.
pub fn find_crossing(
    n: u32,
    l: u32,
    bracket: (ExactScalar, ExactScalar),
    digits: usize,
    size: usize,
) -> Result<CrossingRecord> {
    let (mut lo, mut hi) = bracket;
    if lo >= hi {
        return Err(Error::InvalidArgument(format!("empty bracket ({lo}, {hi})")));
    }
    let pair = CrossingPair::new(n, l, digits, size)?;
    let d_lo = pair.difference(&lo)?;
    let d_hi = pair.difference(&hi)?;
    let s_lo = d_lo.sign();
    if d_lo.repr().is_zero() {
        hi = lo.clone();
    } else if d_hi.repr().is_zero() {
        lo = hi.clone();
    } else if s_lo == d_hi.sign() {
        let show = |x: &BigFloat| format_rational(&float_to_rational(x), digits);
        return Err(Error::NoSignChange { lo: show(&d_lo), hi: show(&d_hi) });
    }
    let two = RBig::from(2u8);
    let unit = pow10(-(digits as i64) - 2);
    loop {
        let scale = if hi > RBig::ONE { hi.clone() } else { RBig::ONE };
        if &hi - &lo <= &unit * scale {
            break;
        }
        let mid = (&lo + &hi) / &two;
        let d = pair.difference(&mid)?;
        if d.repr().is_zero() {
            lo = mid.clone();
            hi = mid;
            break;
        }
        if d.sign() == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let star = (&lo + &hi) / two;
    let (a, b) = pair.energies(&star)?;
    let bits = a.precision();
    let residual = abs(&(&a - &b));
    let shared_energy = (a + b) / float_from_rational(&RBig::from(2u8), bits);
    Ok(CrossingRecord {
        n,
        l,
        pair: ((n + 1, l), (n, l + 2)),
        beta_star: float_from_rational(&star, bits),
        shared_energy,
        residual,
        basis_size: size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn bracket_without_sign_change() {
        let err = find_crossing(0, 0, (rat(3, 1), rat(4, 1)), 6, 16).unwrap_err();
        assert!(matches!(err, Error::NoSignChange { .. }), "{err}");
        assert!(find_crossing(0, 0, (rat(4, 1), rat(3, 1)), 6, 16).is_err());
    }

    #[test]
    fn small_basis_crossing() {
        let c = find_crossing(0, 0, (rat(3, 2), rat(5, 2)), 8, 24).unwrap();
        let beta = float_to_rational(&c.beta_star);
        assert!(dashu_base::Abs::abs(beta - rat(2, 1)) < rat(1, 1_000_000));
        assert_eq!(c.pair, ((1, 0), (0, 2)));
    }
}
