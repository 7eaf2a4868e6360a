use dashu_ratio::RBig;

use crate::error::{Error, Result};
use crate::exact::{rat, ExactScalar, SymmetricExactMatrix};
use crate::model::DimensionlessProblem;

/// Basis `f_i(r) = r^{i+l}(r0 − r)`, `i = 0 … size−1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisSpec {
    pub l: u32,
    pub r0: ExactScalar,
    pub size: usize,
}

impl BasisSpec {
    pub fn new(l: u32, r0: ExactScalar, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidArgument("basis size must be at least 1".into()));
        }
        if r0 <= RBig::ZERO {
            return Err(Error::InvalidArgument(format!("box radius must be positive, got {r0}")));
        }
        Ok(Self { l, r0, size })
    }

    pub fn for_problem(problem: &DimensionlessProblem, size: usize) -> Result<Self> {
        Self::new(problem.l(), problem.r0().clone(), size)
    }
}

/// Overlap `S`, kinetic-plus-centrifugal `T` and Coulomb weight `C`, so that
/// the secular problem at coupling `β` is `(T − βC)c = W·S·c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecularMatrices {
    pub basis: BasisSpec,
    pub s: SymmetricExactMatrix,
    pub t: SymmetricExactMatrix,
    pub c: SymmetricExactMatrix,
}

impl SecularMatrices {
    /// `T − βC`.
    pub fn hamiltonian(&self, beta: &ExactScalar) -> SymmetricExactMatrix {
        SymmetricExactMatrix::combination(&[(&RBig::ONE, &self.t), (&-beta.clone(), &self.c)])
    }

    /// `T − βC − W·S`.
    pub fn shifted(&self, beta: &ExactScalar, w: &ExactScalar) -> SymmetricExactMatrix {
        SymmetricExactMatrix::combination(&[
            (&RBig::ONE, &self.t),
            (&-beta.clone(), &self.c),
            (&-w.clone(), &self.s),
        ])
    }
}

/// A polynomial as `(power, coefficient)` terms.
type Sparse = Vec<(usize, ExactScalar)>;

struct Moments {
    powers: Vec<ExactScalar>,
}

impl Moments {
    fn new(r0: &ExactScalar, max_power: usize) -> Self {
        let mut powers = Vec::with_capacity(max_power + 2);
        let mut p = RBig::ONE;
        for _ in 0..=max_power + 1 {
            powers.push(p.clone());
            p *= r0;
        }
        Self { powers }
    }

    /// `∫_0^{r0} r^k dr`.
    fn monomial(&self, k: usize) -> ExactScalar {
        &self.powers[k + 1] / RBig::from(k as u64 + 1)
    }

    /// `∫_0^{r0} f·g·r^w dr`.
    fn product(&self, f: &Sparse, g: &Sparse, w: usize) -> ExactScalar {
        let mut s = RBig::ZERO;
        for (p, a) in f {
            for (q, b) in g {
                s += a * b * self.monomial(p + q + w);
            }
        }
        s
    }
}

/// Exact `S`, `T` and `C` for the basis.
///
/// The kinetic term uses the symmetric gradient form
/// `½∫ f_i′ f_j′ r² dr + l(l+1)/2 ∫ f_i f_j dr`; the boundary terms of the
/// integration by parts vanish because `f(r0) = 0` and the weight is `r²`.
pub fn assemble(basis: &BasisSpec) -> SecularMatrices {
    let l = basis.l as usize;
    let n = basis.size;
    let r0 = &basis.r0;
    let moments = Moments::new(r0, 2 * (n + l) + 2);
    let f: Vec<Sparse> = (0..n).map(|i| vec![(i + l, r0.clone()), (i + l + 1, rat(-1, 1))]).collect();
    let df: Vec<Sparse> = (0..n)
        .map(|i| {
            let a = i + l;
            let mut terms = Vec::with_capacity(2);
            if a > 0 {
                terms.push((a - 1, r0 * RBig::from(a as u64)));
            }
            terms.push((a, rat(-(a as i64) - 1, 1)));
            terms
        })
        .collect();
    let centrifugal = rat((l * (l + 1)) as i64, 2);
    let half = rat(1, 2);
    let s = SymmetricExactMatrix::from_fn(n, |i, j| moments.product(&f[i], &f[j], 2));
    let c = SymmetricExactMatrix::from_fn(n, |i, j| moments.product(&f[i], &f[j], 1));
    let t = SymmetricExactMatrix::from_fn(n, |i, j| {
        let kinetic = &half * moments.product(&df[i], &df[j], 2);
        if l == 0 {
            kinetic
        } else {
            kinetic + &centrifugal * moments.product(&f[i], &f[j], 0)
        }
    });
    SecularMatrices { basis: basis.clone(), s, t, c }
}
