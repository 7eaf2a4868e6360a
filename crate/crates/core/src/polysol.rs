//! Polynomial solutions of the confined radial problem.
//!
//! The ansatz `R(r) = r^l (1 − r) e^{−αr} Σ c_j r^j` turns the radial equation
//! into the three-term recurrence `c_{j+2} = A_j c_{j+1} + B_j c_j`. With
//! `α = β/(l+ν+2)` the coefficient `B_ν` vanishes, so the series stops at degree
//! `ν` exactly when `c_{ν+1}(β) = 0`. The `ν+1` roots of that polynomial in `β`
//! are the couplings at which the problem has a closed-form eigenfunction with
//! energy `−β²/(2(l+ν+2)²)`.

use dashu_ratio::RBig;

use crate::error::{Error, Result};
use crate::exact::{
    count_roots_in_unit_interval, float_from_int, float_from_rational, rat,
    working_bits_for_digits, BigFloat, ExactPolynomial, ExactScalar, IsolatedRoot,
    SturmSequence, DEFAULT_PRECISION_BITS,
};

/// Angular momentum and polynomial degree of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RecurrenceSpec {
    pub l: u32,
    pub nu: u32,
}

impl RecurrenceSpec {
    pub fn new(l: u32, nu: u32) -> Self {
        Self { l, nu }
    }

    /// `l + ν + 2`, the denominator of the exponent `α = β/(l+ν+2)`.
    pub fn alpha_denominator(&self) -> i64 {
        (self.l + self.nu + 2) as i64
    }

    /// `α` as a polynomial in `β`.
    pub fn alpha(&self) -> ExactPolynomial {
        ExactPolynomial::linear(RBig::ZERO, rat(1, self.alpha_denominator()))
    }
}

/// `(A_j, B_j)` as polynomials in `β`, for `j ≥ −1`.
///
/// `j = −1` encodes the start of the recurrence, `c_1 = A_{−1} c_0`; `B_{−1}`
/// would multiply `c_{−1} = 0` and is returned as zero.
pub fn recurrence_coefficients(
    spec: RecurrenceSpec,
    j: i64,
) -> Result<(ExactPolynomial, ExactPolynomial)> {
    if j < -1 {
        return Err(Error::InvalidArgument(format!("recurrence index must be >= -1, got {j}")));
    }
    let l = spec.l as i64;
    let nu = spec.nu as i64;
    let big_l = spec.alpha_denominator();
    let den = (j + 2) * (j + 2 * l + 3) * big_l;
    let a_const = (j * j + j * (2 * l + 5) + 2 * (2 * l + 3)) * big_l;
    let a = ExactPolynomial::linear(rat(a_const, den), rat(2 * (j - nu), den));
    let b = if j == -1 {
        ExactPolynomial::zero()
    } else {
        ExactPolynomial::linear(RBig::ZERO, rat(2 * (nu - j), den))
    };
    Ok((a, b))
}

/// `c_0, …, c_{m}` as polynomials in `β`, with `c_0 = 1`.
pub fn coefficient_polynomials(spec: RecurrenceSpec, m: usize) -> Vec<ExactPolynomial> {
    let mut c = vec![ExactPolynomial::constant(RBig::ONE)];
    if m == 0 {
        return c;
    }
    let (a, _) = recurrence_coefficients(spec, -1).expect("j = -1 is valid");
    c.push(&a * &c[0]);
    for j in 0..m as i64 - 1 {
        let (a, b) = recurrence_coefficients(spec, j).expect("j >= 0 is valid");
        let k = j as usize;
        let next = &(&a * &c[k + 1]) + &(&b * &c[k]);
        c.push(next);
    }
    c
}

/// The truncation polynomial `c_{ν+1}(β)`.
pub fn truncation_polynomial(spec: RecurrenceSpec) -> ExactPolynomial {
    coefficient_polynomials(spec, spec.nu as usize + 1).pop().expect("non-empty")
}

/// Exact coefficients `c_0 … c_ν` at a rational coupling.
pub fn coefficients_at(spec: RecurrenceSpec, beta: &ExactScalar) -> Vec<ExactScalar> {
    let nu = spec.nu as usize;
    let mut c = vec![RBig::ONE];
    if nu == 0 {
        return c;
    }
    let eval = |j: i64| {
        let (a, b) = recurrence_coefficients(spec, j).expect("valid index");
        (a.eval(beta), b.eval(beta))
    };
    let (a, _) = eval(-1);
    c.push(a);
    for j in 0..nu as i64 - 1 {
        let (a, b) = eval(j);
        let k = j as usize;
        let next = a * &c[k + 1] + b * &c[k];
        c.push(next);
    }
    c
}

/// Zeros of `Σ c_j r^j` in the open interval `(0, 1)`.
pub fn node_count(coefficients: &[ExactScalar]) -> Result<usize> {
    count_roots_in_unit_interval(&ExactPolynomial::new(coefficients.to_vec()))
}

/// `−β²/(2(l+ν+2)²)`.
pub fn polysol_energy(l: u32, nu: u32, beta: &BigFloat) -> BigFloat {
    let k = (l + nu + 2) as i64;
    let bits = beta.precision().max(64);
    -(beta * beta) / float_from_int(2 * k * k, bits)
}

/// One closed-form eigenfunction of the confined problem.
#[derive(Clone, Debug)]
pub struct PolySolution {
    pub l: u32,
    pub nu: u32,
    /// Zeros of the polynomial factor in `(0, 1)`; equal to the index of the
    /// root in ascending order.
    pub node_count: usize,
    pub beta_root: BigFloat,
    /// Exact interval known to contain the root.
    pub bracket: IsolatedRoot,
    pub alpha: BigFloat,
    pub energy: BigFloat,
    /// `c_0 … c_ν` at the root, `c_0 = 1`.
    pub coefficients: Vec<BigFloat>,
}

impl PolySolution {
    /// Radial residual `(H − E)R / scale` at `r ∈ (0, 1)`, with the factor
    /// `e^{−αr}` divided out. `scale` is the largest term in the sum.
    pub fn radial_residual(&self, r: &BigFloat) -> BigFloat {
        let bits = self.beta_root.precision();
        let one = float_from_int(1, bits);
        let half = float_from_int(1, bits) / float_from_int(2, bits);
        let l = self.l as i64;
        // Q(r) = r^l (1 − r) P(r) as float coefficients, low to high
        let mut q = vec![float_from_int(0, bits); self.l as usize];
        q.extend(self.coefficients.iter().cloned());
        q.push(float_from_int(0, bits));
        for k in (1..q.len()).rev() {
            let prev = q[k - 1].clone();
            q[k] = &q[k] - prev;
        }
        let eval = |coeffs: &[BigFloat]| {
            coeffs.iter().rev().fold(float_from_int(0, bits), |acc, c| acc * r + c)
        };
        let d1: Vec<BigFloat> =
            q.iter().enumerate().skip(1).map(|(k, c)| c * float_from_int(k as i64, bits)).collect();
        let d2: Vec<BigFloat> =
            d1.iter().enumerate().skip(1).map(|(k, c)| c * float_from_int(k as i64, bits)).collect();
        let (q0, q1, q2) = (eval(&q), eval(&d1), eval(&d2));
        let a = &self.alpha;
        let two = float_from_int(2, bits);
        let terms = [
            -(&half * &q2),
            &half * &two * a * &q1,
            -(&half * a * a * &q0),
            -(&q1 / r),
            a * &q0 / r,
            float_from_int(l * (l + 1), bits) * &half * &q0 / (r * r),
            -(&self.beta_root * &q0 / r),
            -(&self.energy * &q0),
        ];
        let scale = terms.iter().map(abs).fold(one.clone(), |m, t| if t > m { t } else { m });
        let sum = terms.iter().fold(float_from_int(0, bits), |s, t| s + t);
        abs(&sum) / scale
    }
}

fn abs(x: &BigFloat) -> BigFloat {
    if x.sign() == dashu_base::Sign::Negative {
        -x.clone()
    } else {
        x.clone()
    }
}

/// All `ν + 1` truncation roots for `(l, ν)`, ascending, to `digits` significant
/// digits, each with its node count verified against its index.
///
/// A root count other than `ν + 1` on the positive axis, or a node count that
/// differs from the index, is reported as a [`Error::ModelAnomaly`].
pub fn polysol_roots(l: u32, nu: u32, digits: usize) -> Result<Vec<PolySolution>> {
    if digits == 0 {
        return Err(Error::InvalidArgument("digits must be at least 1".into()));
    }
    let spec = RecurrenceSpec::new(l, nu);
    let p = truncation_polynomial(spec);
    let sturm = SturmSequence::new(&p)?;
    let bound = p.root_bound();
    let roots = sturm.isolate(&RBig::ZERO, &bound)?;
    let total = sturm.count(&-bound.clone(), &bound)?;
    if roots.len() != nu as usize + 1 || total != roots.len() {
        return Err(Error::ModelAnomaly(format!(
            "(l = {l}, nu = {nu}): expected {} positive real roots, found {} positive of {} real",
            nu + 1,
            roots.len(),
            total
        )));
    }
    let fine_digits = 2 * digits + 10;
    let bits = working_bits_for_digits(fine_digits).max(DEFAULT_PRECISION_BITS);
    roots
        .iter()
        .enumerate()
        .map(|(index, root)| {
            let bracket = sturm.refine(root, fine_digits);
            let nodes = certified_node_count(spec, &sturm, bracket.clone(), fine_digits)?;
            if nodes != index {
                return Err(Error::ModelAnomaly(format!(
                    "(l = {l}, nu = {nu}): root {index} has {nodes} nodes"
                )));
            }
            let mid = bracket.midpoint();
            let beta_root = float_from_rational(&mid, bits);
            let alpha = &beta_root / float_from_int(spec.alpha_denominator(), bits);
            let energy = polysol_energy(l, nu, &beta_root);
            let coefficients =
                coefficients_at(spec, &mid).iter().map(|c| float_from_rational(c, bits)).collect();
            Ok(PolySolution {
                l,
                nu,
                node_count: nodes,
                beta_root,
                bracket,
                alpha,
                energy,
                coefficients,
            })
        })
        .collect()
}

/// Node count of the solution whose coupling lies in `bracket`, evaluated at
/// both ends; the bracket is tightened until the two counts agree.
fn certified_node_count(
    spec: RecurrenceSpec,
    sturm: &SturmSequence,
    mut bracket: IsolatedRoot,
    mut digits: usize,
) -> Result<usize> {
    for _ in 0..4 {
        let lo = node_count(&coefficients_at(spec, &bracket.lo));
        let hi = node_count(&coefficients_at(spec, &bracket.hi));
        if let (Ok(a), Ok(b)) = (&lo, &hi) {
            if a == b {
                return Ok(*a);
            }
        }
        digits *= 2;
        bracket = sturm.refine(&bracket, digits);
    }
    Err(Error::PrecisionExhausted {
        what: format!("node count for (l = {}, nu = {})", spec.l, spec.nu),
        bits: working_bits_for_digits(digits),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{float_to_rational, format_rational};

    fn fmt(x: &BigFloat) -> String {
        format_rational(&float_to_rational(x), 10)
    }

    #[test]
    fn recurrence_examples() {
        let (_, b) = recurrence_coefficients(RecurrenceSpec::new(0, 0), 0).unwrap();
        assert!(b.is_zero());
        let (a, b) = recurrence_coefficients(RecurrenceSpec::new(0, 1), 0).unwrap();
        assert_eq!(a, ExactPolynomial::new(vec![rat(1, 1), rat(-1, 9)]));
        assert_eq!(b, ExactPolynomial::new(vec![rat(0, 1), rat(1, 9)]));
        // α + 1 − β/(l+1) at l = ν = 0
        let (a, b) = recurrence_coefficients(RecurrenceSpec::new(0, 0), -1).unwrap();
        assert_eq!(a, ExactPolynomial::new(vec![rat(1, 1), rat(-1, 2)]));
        assert!(b.is_zero());
        assert!(recurrence_coefficients(RecurrenceSpec::new(0, 0), -2).is_err());
    }

    #[test]
    fn start_matches_alpha_form() {
        for l in 0..4 {
            for nu in 0..4 {
                let spec = RecurrenceSpec::new(l, nu);
                let (a, _) = recurrence_coefficients(spec, -1).unwrap();
                let expected = &(&spec.alpha() + &ExactPolynomial::constant(RBig::ONE))
                    - &ExactPolynomial::linear(RBig::ZERO, rat(1, l as i64 + 1));
                assert_eq!(a, expected);
            }
        }
    }

    #[test]
    fn truncation_examples() {
        let p = truncation_polynomial(RecurrenceSpec::new(0, 1));
        assert_eq!(p, ExactPolynomial::new(vec![rat(1, 1), rat(-2, 3), rat(2, 27)]));
        for (l, beta) in [(0, 2), (1, 6), (2, 12)] {
            let p = truncation_polynomial(RecurrenceSpec::new(l, 0));
            assert_eq!(p.degree(), Some(1));
            assert!(p.eval(&rat(beta, 1)).is_zero());
        }
    }

    #[test]
    fn ground_solutions() {
        let sols = polysol_roots(0, 0, 10).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(fmt(&sols[0].beta_root), "2.000000000");
        assert_eq!(fmt(&sols[0].energy), "-0.5000000000");
        assert_eq!(sols[0].node_count, 0);
        let e = polysol_energy(1, 0, &float_from_int(6, 128));
        assert_eq!(fmt(&e), "-2.000000000");
        let e = polysol_energy(2, 0, &float_from_int(12, 128));
        assert_eq!(fmt(&e), "-4.500000000");
    }

    #[test]
    fn linear_polynomial_nodes() {
        let sols = polysol_roots(0, 1, 10).unwrap();
        let printed: Vec<String> = sols.iter().map(|s| fmt(&s.beta_root)).collect();
        assert_eq!(printed, ["1.901923789", "7.098076211"]);
        assert_eq!(sols[0].node_count, 0);
        assert_eq!(sols[1].node_count, 1);
        assert_eq!(node_count(&[rat(3, 1)]).unwrap(), 0);
    }

    #[test]
    fn residual_is_small() {
        for sol in polysol_roots(1, 3, 10).unwrap() {
            for k in 1..10 {
                let r = float_from_int(k, 256) / float_from_int(10, 256);
                let res = sol.radial_residual(&r);
                assert!(float_to_rational(&res) < rat(1, 100_000_000), "residual {res}");
            }
        }
    }
}
