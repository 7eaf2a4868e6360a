//! Closed-form references from Bessel-function zeros, computed from power
//! series in exact rational arithmetic.
//!
//! At `β = 0` the radial solutions are spherical Bessel functions `j_l(kr)`,
//! so the box levels are `E = x²/2` with `x` a positive zero of
//! `j_l(x)/x^l = Σ_k (−x²/2)^k / (k!·(2l+2k+1)!!)`.
//!
//! At `E = 0` the solutions are `r^{−1/2} J_{2l+1}(√(8βr))`, so the critical
//! couplings are `β = z²/8` with `z` a positive zero of
//! `J_m(z)/(z/2)^m = Σ_k (−z²/4)^k / (k!·(k+m)!)`, `m = 2l+1`.
//!
//! Signs are certified: once the terms decrease in magnitude the series
//! alternates, so the remainder is smaller than the first omitted term.

use std::cmp::Ordering;

use dashu_base::{Abs, Sign};
use dashu_ratio::RBig;

use crate::error::{Error, Result};
use crate::exact::{pow10, rat, round_significant, ExactScalar};

/// Most terms summed before a sign is declared uncertifiable.
const MAX_TERMS: usize = 4096;

/// `Σ_k (−u)^k a_k` with `a_0 = 1` and `a_{k+1}/a_k = ratio(k)`.
struct Series<F: Fn(u64) -> ExactScalar> {
    ratio: F,
}

impl<F: Fn(u64) -> ExactScalar> Series<F> {
    /// Certified sign of the series at `u > 0`; `None` if it is zero to
    /// within the summation limit.
    fn sign(&self, u: &ExactScalar) -> Option<Sign> {
        let mut term = RBig::ONE;
        let mut sum = RBig::ONE;
        for k in 0..MAX_TERMS as u64 {
            let factor = u * (self.ratio)(k);
            let next = -(&term * &factor);
            // from here on |t_{k+1}| < |t_k| for every later k as well
            if factor < RBig::ONE && sum.clone().abs() > next.clone().abs() {
                return Some(sum.sign());
            }
            sum += &next;
            term = next;
        }
        None
    }
}

/// Positive zeros in the variable `x`, where the series argument is
/// `u = x²·scale`. Returns `count` isolating intervals refined to `rel_digits`.
fn zeros<F: Fn(u64) -> ExactScalar>(
    series: &Series<F>,
    scale: &ExactScalar,
    count: usize,
    rel_digits: usize,
) -> Result<Vec<ExactScalar>> {
    let sign_at = |x: &ExactScalar| {
        series.sign(&(x * x * scale)).ok_or_else(|| Error::PrecisionExhausted {
            what: format!("series sign at {x}"),
            bits: MAX_TERMS,
        })
    };
    // Zeros of these functions are spaced by more than π/2 in x.
    let step = rat(1, 4);
    let mut out = Vec::with_capacity(count);
    let mut a = step.clone();
    let mut sa = sign_at(&a)?;
    while out.len() < count {
        let b = &a + &step;
        let sb = sign_at(&b)?;
        if sb != sa {
            out.push(bisect(&sign_at, a.clone(), b.clone(), sa, rel_digits)?);
        }
        a = b;
        sa = sb;
    }
    Ok(out)
}

fn bisect(
    sign_at: &impl Fn(&ExactScalar) -> Result<Sign>,
    mut lo: ExactScalar,
    mut hi: ExactScalar,
    s_lo: Sign,
    rel_digits: usize,
) -> Result<ExactScalar> {
    let tol = &hi * pow10(-(rel_digits as i64));
    let two = RBig::from(2u8);
    while &hi - &lo > tol {
        let mid = (&lo + &hi) / &two;
        if sign_at(&mid)? == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / two)
}

/// Rounds an exact value to `digits` significant digits and back.
fn rounded(x: &ExactScalar, digits: usize) -> ExactScalar {
    let (m, e) = round_significant(x, digits);
    RBig::from(m) * pow10(e - digits as i64 + 1)
}

/// Particle-in-a-box levels `E_{nl}(β = 0)` for `n = 0 … count−1`, each to
/// `digits` significant digits.
pub fn box_levels(l: u32, count: usize, digits: usize) -> Result<Vec<ExactScalar>> {
    let two_l = 2 * l as u64;
    // a_{k+1}/a_k = 1/((k+1)(2l+2k+3)); u = x²/2
    let series = Series { ratio: move |k: u64| rat(1, ((k + 1) * (two_l + 2 * k + 3)) as i64) };
    let xs = zeros(&series, &rat(1, 2), count, digits + 6)?;
    Ok(xs.iter().map(|x| rounded(&(x * x / RBig::from(2u8)), digits)).collect())
}

/// Critical couplings `β^c_{nl}` for `n = 0 … count−1`, each to `digits`
/// significant digits.
pub fn critical_betas(l: u32, count: usize, digits: usize) -> Result<Vec<ExactScalar>> {
    let m = 2 * l as u64 + 1;
    // a_{k+1}/a_k = 1/((k+1)(k+m+1)); u = z²/4
    let series = Series { ratio: move |k: u64| rat(1, ((k + 1) * (k + m + 1)) as i64) };
    let zs = zeros(&series, &rat(1, 4), count, digits + 6)?;
    Ok(zs.iter().map(|z| rounded(&(z * z / RBig::from(8u8)), digits)).collect())
}

/// `|a − b| ≤ tol`.
pub fn within(a: &ExactScalar, b: &ExactScalar, tol: &ExactScalar) -> bool {
    (a - b).abs().cmp(tol) != Ordering::Greater
}
