//! Rayleigh-Ritz solver in the non-orthogonal basis `r^{i+l}(r0 − r)`.
//!
//! Matrices are assembled exactly. Eigenvalues are located in floating point
//! at a precision that grows with the basis size (the overlap matrix is
//! Hilbert-like, with condition number near `10^(1.5N)`), then certified: the
//! `n`-th Ritz value is proven to lie in `[lo, hi)` by exact inertia counts of
//! `T − βC − lo·S` and `T − βC − hi·S`.

mod assemble;
mod dense;

use dashu_base::Sign;
use dashu_int::IBig;
use dashu_ratio::RBig;

pub use assemble::{assemble, BasisSpec, SecularMatrices};
pub(crate) use dense::FloatMatrix;
pub use dense::abs;

use crate::error::{Error, Result};
use crate::exact::{
    float_from_int, float_from_rational, float_pow2, float_to_rational, working_bits_for_digits, BigFloat,
    ExactScalar, SymmetricExactMatrix, DEFAULT_PRECISION_BITS,
};
use crate::model::DimensionlessProblem;

/// Default basis size for table reproduction.
pub const DEFAULT_BASIS_SIZE: usize = 40;

/// Precision doublings tried before a certification failure is reported.
const MAX_ESCALATIONS: usize = 3;

/// Whether float eigenvalues are checked by exact inertia counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Certification {
    #[default]
    Exact,
    /// Float values only; for dense parameter sweeps.
    Skip,
}

/// Working precision for a basis: the requested precision plus enough guard
/// bits to absorb the conditioning of the overlap matrix.
pub fn working_bits(basis: &BasisSpec, digits: usize, precision_bits: usize) -> usize {
    let n = basis.size;
    let radius_bits = {
        let r = float_from_rational(&basis.r0, 64).to_f64().value();
        r.log2().abs().ceil() as usize
    };
    precision_bits.max(working_bits_for_digits(2 * digits))
        + 6 * n
        + 4 * basis.l as usize
        + 2 * n * radius_bits
        + 64
}

/// Negative-inertia count of `a − q·b`; fails if `q` is itself an eigenvalue
/// of the pencil `(a, b)`.
pub fn count_pencil_below(
    a: &SymmetricExactMatrix,
    b: &SymmetricExactMatrix,
    q: &ExactScalar,
) -> Result<usize> {
    let m = SymmetricExactMatrix::combination(&[(&RBig::ONE, a), (&-q.clone(), b)]);
    let inertia = m.inertia();
    if inertia.zero > 0 {
        return Err(Error::ProbeIsEigenvalue(q.to_string()));
    }
    Ok(inertia.negative)
}

/// Number of Ritz values of `(T − βC, S)` strictly below `w`.
pub fn count_below(mat: &SecularMatrices, beta: &ExactScalar, w: &ExactScalar) -> Result<usize> {
    let inertia = mat.shifted(beta, w).inertia();
    if inertia.zero > 0 {
        return Err(Error::ProbeIsEigenvalue(w.to_string()));
    }
    Ok(inertia.negative)
}

/// Float reduction of a pencil `(A, B)` with `B` positive definite:
/// `B = G·Gᵀ` and `K = G⁻¹·A·G⁻ᵀ` for each target `A`.
#[derive(Clone, Debug)]
pub(crate) struct Reduction {
    pub g: FloatMatrix,
    pub k: Vec<FloatMatrix>,
    pub bits: usize,
}

impl Reduction {
    pub fn new(
        metric: &SymmetricExactMatrix,
        targets: &[&SymmetricExactMatrix],
        bits: usize,
    ) -> Result<Self> {
        let g = FloatMatrix::from_rows(metric.to_float_rows(bits)).cholesky()?;
        let k = targets
            .iter()
            .map(|t| FloatMatrix::from_rows(t.to_float_rows(bits)).congruence_by_inverse(&g))
            .collect();
        Ok(Self { g, k, bits })
    }
}

/// Lowest `k` eigenvalues of a reduced float matrix, to about `digits + 3`
/// significant digits.
pub(crate) fn lowest_eigenvalues(kmat: &FloatMatrix, k: usize, digits: usize) -> Vec<BigFloat> {
    let tri = kmat.tridiagonalize();
    let rel_bits = working_bits_for_digits(digits + 6);
    (0..k).map(|i| tri.eigenvalue(i, rel_bits)).collect()
}

/// `floor` (`up = false`) or `ceil` of `x` on the grid `10^-s`.
fn decimal_grid(x: &BigFloat, s: i64, up: bool) -> ExactScalar {
    let scale = crate::exact::pow10(s);
    let y = float_to_rational(x) * &scale;
    let n: IBig = if up { y.ceil() } else { y.floor() };
    RBig::from(n) / scale
}

/// Short rational probes just below and above `w`, separated from it by
/// roughly `10^-(digits+3)` relative.
pub(crate) fn probes_around(w: &BigFloat, digits: usize) -> (ExactScalar, ExactScalar) {
    let wr = float_to_rational(w);
    let mag = if wr.is_zero() { 0 } else { crate::exact::decimal_exponent(&wr).max(0) };
    let s = digits as i64 + 3 - mag;
    let step = crate::exact::pow10(-s);
    let lo = decimal_grid(w, s, false) - &step;
    let hi = decimal_grid(w, s, true) + &step;
    (lo, hi)
}

/// Proves that eigenvalue `n` of the pencil `(a, b)` lies in `[lo, hi)`.
pub(crate) fn certify_bracket(
    a: &SymmetricExactMatrix,
    b: &SymmetricExactMatrix,
    n: usize,
    lo: &ExactScalar,
    hi: &ExactScalar,
) -> Result<bool> {
    let below_lo = match count_pencil_below(a, b, lo) {
        Ok(c) => c,
        Err(Error::ProbeIsEigenvalue(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    if below_lo > n {
        return Ok(false);
    }
    let below_hi = match count_pencil_below(a, b, hi) {
        Ok(c) => c,
        Err(Error::ProbeIsEigenvalue(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    Ok(below_hi > n)
}

/// Lowest Ritz values of one problem at one basis size.
#[derive(Clone, Debug)]
pub struct RitzSpectrum {
    pub problem: DimensionlessProblem,
    pub basis_size: usize,
    /// Ascending Ritz values `W_0 < W_1 < …`.
    pub values: Vec<BigFloat>,
    /// Exact brackets `[lo, hi)` for each value, when certified.
    pub brackets: Option<Vec<(ExactScalar, ExactScalar)>>,
    pub precision_bits: usize,
}

impl RitzSpectrum {
    pub fn certified(&self) -> bool {
        self.brackets.is_some()
    }
}

/// A normalized Ritz vector.
#[derive(Clone, Debug)]
pub struct RitzVector {
    pub level: usize,
    pub value: BigFloat,
    /// Coefficients in the basis `f_i`, with `cᵀSc = 1` and the first
    /// nonzero entry positive.
    pub coefficients: Vec<BigFloat>,
    /// Set when a neighbouring Ritz value is within the working tolerance.
    pub degenerate: bool,
    /// `cᵀCc`, the expectation value of `1/r`.
    pub inverse_r: BigFloat,
}

/// Exact matrices of one basis together with their float reduction.
///
/// Building a solver costs one Cholesky factorization and two congruences;
/// after that every coupling `β` costs a single tridiagonalization.
#[derive(Clone, Debug)]
pub struct RitzSolver {
    matrices: SecularMatrices,
    reduction: Reduction,
    digits: usize,
}

impl RitzSolver {
    pub fn new(basis: &BasisSpec, digits: usize, precision_bits: usize) -> Result<Self> {
        if digits == 0 {
            return Err(Error::InvalidArgument("digits must be at least 1".into()));
        }
        let matrices = assemble(basis);
        let bits = working_bits(basis, digits, precision_bits);
        Self::from_matrices(matrices, digits, bits)
    }

    fn from_matrices(matrices: SecularMatrices, digits: usize, mut bits: usize) -> Result<Self> {
        for _ in 0..=MAX_ESCALATIONS {
            match Reduction::new(&matrices.s, &[&matrices.t, &matrices.c], bits) {
                Ok(reduction) => return Ok(Self { matrices, reduction, digits }),
                Err(Error::NotPositiveDefinite(_)) => bits *= 2,
                Err(e) => return Err(e),
            }
        }
        Err(Error::PrecisionExhausted { what: "Cholesky factor of the overlap matrix".into(), bits })
    }

    /// The same basis at twice the working precision.
    pub fn escalated(&self) -> Result<Self> {
        Self::from_matrices(self.matrices.clone(), self.digits, 2 * self.reduction.bits)
    }

    pub fn matrices(&self) -> &SecularMatrices {
        &self.matrices
    }

    pub fn basis(&self) -> &BasisSpec {
        &self.matrices.basis
    }

    pub fn bits(&self) -> usize {
        self.reduction.bits
    }

    pub fn digits(&self) -> usize {
        self.digits
    }

    /// `G⁻¹(T − βC)G⁻ᵀ` in floating point.
    fn reduced(&self, beta: &ExactScalar) -> FloatMatrix {
        let b = float_from_rational(beta, self.reduction.bits);
        self.reduction.k[0].sub_scaled(&b, &self.reduction.k[1])
    }

    /// Lowest `k` Ritz values in floating point, uncertified.
    pub fn approximate_values(&self, beta: &ExactScalar, k: usize) -> Result<Vec<BigFloat>> {
        self.check_levels(k)?;
        Ok(lowest_eigenvalues(&self.reduced(beta), k, self.digits))
    }

    fn check_levels(&self, k: usize) -> Result<()> {
        if k > self.basis().size {
            return Err(Error::InvalidArgument(format!(
                "requested {k} levels from a basis of size {}",
                self.basis().size
            )));
        }
        Ok(())
    }

    /// Lowest `k` Ritz values at coupling `β`, optionally certified.
    pub fn spectrum(
        &self,
        beta: &ExactScalar,
        k: usize,
        certification: Certification,
    ) -> Result<RitzSpectrum> {
        self.check_levels(k)?;
        let problem = DimensionlessProblem::with_radius(
            self.basis().l,
            beta.clone(),
            self.basis().r0.clone(),
        )?;
        let mut solver = std::borrow::Cow::Borrowed(self);
        for _ in 0..=MAX_ESCALATIONS {
            let values = solver.approximate_values(beta, k)?;
            let brackets = match certification {
                Certification::Skip => None,
                Certification::Exact => match solver.certify(beta, &values)? {
                    Some(b) => Some(b),
                    None => {
                        solver = std::borrow::Cow::Owned(solver.escalated()?);
                        continue;
                    }
                },
            };
            return Ok(RitzSpectrum {
                problem,
                basis_size: self.basis().size,
                values,
                brackets,
                precision_bits: solver.bits(),
            });
        }
        Err(Error::PrecisionExhausted {
            what: format!("Ritz values for {problem}"),
            bits: solver.bits(),
        })
    }

    fn certify(
        &self,
        beta: &ExactScalar,
        values: &[BigFloat],
    ) -> Result<Option<Vec<(ExactScalar, ExactScalar)>>> {
        let h = self.matrices.hamiltonian(beta);
        let mut out = Vec::with_capacity(values.len());
        for (n, w) in values.iter().enumerate() {
            let (lo, hi) = probes_around(w, self.digits);
            if !certify_bracket(&h, &self.matrices.s, n, &lo, &hi)? {
                return Ok(None);
            }
            out.push((lo, hi));
        }
        Ok(Some(out))
    }

    /// Normalized eigenvector of level `n` by inverse iteration.
    pub fn vector(&self, beta: &ExactScalar, n: usize) -> Result<RitzVector> {
        self.check_levels(n + 1)?;
        let bits = self.bits();
        let k = self.reduced(beta);
        let size = self.basis().size;
        let count = (n + 2).min(size);
        let values = lowest_eigenvalues(&k, count, self.digits);
        let w = values[n].clone();
        let one = float_from_int(1, bits);
        let mag = abs(&w).max(one.clone());
        let tol = &mag * float_pow2(-(working_bits_for_digits(self.digits) as isize), bits);
        let degenerate = (n > 0 && abs(&(&w - &values[n - 1])) < tol)
            || (n + 1 < count && abs(&(&values[n + 1] - &w)) < tol);
        let tiny = &mag * float_pow2(8 - bits as isize, bits);
        let mut x: Vec<BigFloat> =
            (0..size).map(|i| float_from_int(1 + (i as i64 % 3), bits)).collect();
        for _ in 0..3 {
            x = k.shifted_solve(&w, &x, &tiny);
            let norm = x.iter().fold(float_from_int(0, bits), |s, v| s + v * v);
            let norm = dashu_base::SquareRoot::sqrt(&norm);
            x = x.iter().map(|v| v / &norm).collect();
        }
        let kc = &self.reduction.k[1];
        let kcx = kc.mul_vec(&x);
        let inverse_r = x.iter().zip(&kcx).fold(float_from_int(0, bits), |s, (a, b)| s + a * b);
        let mut c = self.reduction.g.back_solve_transposed(&x);
        if let Some(first) = c.iter().find(|v| !v.repr().is_zero()) {
            if first.sign() == Sign::Negative {
                c = c.into_iter().map(|v| -v).collect();
            }
        }
        Ok(RitzVector { level: n, value: w, coefficients: c, degenerate, inverse_r })
    }
}

/// Lowest `k` certified Ritz values for a problem with a basis of `size`
/// functions, each to `digits` significant digits.
pub fn ritz_values(
    problem: &DimensionlessProblem,
    size: usize,
    k: usize,
    digits: usize,
) -> Result<RitzSpectrum> {
    let basis = BasisSpec::for_problem(problem, size)?;
    RitzSolver::new(&basis, digits, DEFAULT_PRECISION_BITS)?.spectrum(
        problem.beta(),
        k,
        Certification::Exact,
    )
}

/// Largest basis tried by [`ritz_values_converged`].
pub const MAX_BASIS_SIZE: usize = 96;

/// Certified Ritz values, growing the basis from `size` in steps of eight
/// until the lowest `k` values move by less than `10^-digits·max(1, |W|)`.
pub fn ritz_values_converged(
    problem: &DimensionlessProblem,
    size: usize,
    k: usize,
    digits: usize,
) -> Result<RitzSpectrum> {
    let tol = crate::exact::pow10(-(digits as i64));
    let mut previous = ritz_values(problem, size, k, digits)?;
    let mut n = size;
    while n + 8 <= MAX_BASIS_SIZE {
        n += 8;
        let current = ritz_values(problem, n, k, digits)?;
        let stable = previous.values.iter().zip(&current.values).all(|(a, b)| {
            let (a, b) = (float_to_rational(a), float_to_rational(b));
            let scale = dashu_base::Abs::abs(b.clone()).max(RBig::ONE);
            dashu_base::Abs::abs(a - b) < &tol * scale
        });
        if stable {
            return Ok(current);
        }
        previous = current;
    }
    Err(Error::NotConverged(format!("Ritz values for {problem} at basis size {n}")))
}

/// Normalized Ritz vector of `level`.
pub fn ritz_vector(
    problem: &DimensionlessProblem,
    size: usize,
    level: usize,
    digits: usize,
) -> Result<RitzVector> {
    let basis = BasisSpec::for_problem(problem, size)?;
    RitzSolver::new(&basis, digits, DEFAULT_PRECISION_BITS)?.vector(problem.beta(), level)
}

/// `⟨1/r⟩ = cᵀCc / cᵀSc` for the Ritz vector of `level`.
pub fn expectation_inverse_r(
    problem: &DimensionlessProblem,
    size: usize,
    level: usize,
) -> Result<BigFloat> {
    Ok(ritz_vector(problem, size, level, crate::exact::DEFAULT_DIGITS)?.inverse_r)
}
