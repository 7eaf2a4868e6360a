use std::fmt;

use dashu_base::{Gcd, Sign};
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

use super::float::{float_from_rational, BigFloat};
use super::ExactScalar;

/// Symmetric matrix over the rationals, stored as its packed upper triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricExactMatrix {
    dim: usize,
    upper: Vec<ExactScalar>,
}

/// Sylvester inertia: counts of negative, zero and positive eigenvalues.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
}

impl Inertia {
    pub fn dimension(&self) -> usize {
        self.negative + self.zero + self.positive
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.negative, self.zero, self.positive)
    }
}

#[inline]
fn packed(dim: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * dim - i * (i + 1) / 2 + j
}

impl SymmetricExactMatrix {
    /// Builds the matrix from `entry(i, j)`, which is only called for `i <= j`.
    pub fn from_fn(dim: usize, mut entry: impl FnMut(usize, usize) -> ExactScalar) -> Self {
        assert!(dim >= 1, "matrix dimension must be at least 1");
        let mut upper = Vec::with_capacity(dim * (dim + 1) / 2);
        for i in 0..dim {
            for j in i..dim {
                upper.push(entry(i, j));
            }
        }
        Self { dim, upper }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { RBig::ONE } else { RBig::ZERO })
    }

    pub fn diagonal(entries: &[ExactScalar]) -> Self {
        Self::from_fn(entries.len(), |i, j| if i == j { entries[i].clone() } else { RBig::ZERO })
    }

    /// Rows of a full matrix; panics if it is not square and symmetric.
    pub fn from_rows(rows: &[Vec<ExactScalar>]) -> Self {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix is not square");
            for j in 0..i {
                assert_eq!(rows[i][j], rows[j][i], "matrix is not symmetric at ({i}, {j})");
            }
        }
        Self::from_fn(n, |i, j| rows[i][j].clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactScalar {
        &self.upper[packed(self.dim, i, j)]
    }

    /// Overwrites both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: ExactScalar) {
        let k = packed(self.dim, i, j);
        self.upper[k] = value;
    }

    /// `Σ w_k · M_k` over matrices of equal dimension.
    pub fn combination(terms: &[(&ExactScalar, &SymmetricExactMatrix)]) -> Self {
        let dim = terms[0].1.dim;
        assert!(terms.iter().all(|(_, m)| m.dim == dim), "dimension mismatch");
        let upper = (0..terms[0].1.upper.len())
            .map(|k| {
                terms
                    .iter()
                    .filter(|(w, _)| !w.is_zero())
                    .fold(RBig::ZERO, |s, (w, m)| s + *w * &m.upper[k])
            })
            .collect();
        Self { dim, upper }
    }

    /// `PᵀMP` for the permutation sending row `k` to row `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.dim);
        Self::from_fn(self.dim, |i, j| self.get(perm[i], perm[j]).clone())
    }

    /// `DᵀMD` for an arbitrary square `D` (row-major).
    pub fn congruence(&self, d: &[Vec<ExactScalar>]) -> Self {
        let n = self.dim;
        assert!(d.len() == n && d.iter().all(|r| r.len() == n));
        // MD
        let md: Vec<Vec<ExactScalar>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(RBig::ZERO, |s, k| s + self.get(i, k) * &d[k][j]))
                    .collect()
            })
            .collect();
        Self::from_fn(n, |i, j| (0..n).fold(RBig::ZERO, |s, k| s + &d[k][i] * &md[k][j]))
    }

    /// Quadratic form `xᵀMx` at rational `x`.
    pub fn quadratic_form(&self, x: &[ExactScalar]) -> ExactScalar {
        let mut s = RBig::ZERO;
        for i in 0..self.dim {
            for j in 0..self.dim {
                s += &x[i] * self.get(i, j) * &x[j];
            }
        }
        s
    }

    /// Full row-major copy rounded to `bits`.
    pub fn to_float_rows(&self, bits: usize) -> Vec<Vec<BigFloat>> {
        let n = self.dim;
        let mut rows = vec![Vec::with_capacity(n); n];
        for (i, row) in rows.iter_mut().enumerate() {
            for j in 0..n {
                row.push(float_from_rational(self.get(i, j), bits));
            }
        }
        rows
    }

    /// Integer matrix `L·M` with `L > 0` the lcm of all denominators.
    fn integer_rows(&self) -> Vec<Vec<IBig>> {
        let lcm = self.upper.iter().fold(UBig::ONE, |l, c| {
            let g = (&l).gcd(c.denominator());
            l / g * c.denominator()
        });
        let lcm = RBig::from(lcm);
        let n = self.dim;
        (0..n)
            .map(|i| (0..n).map(|j| (self.get(i, j) * &lcm).numerator().clone()).collect())
            .collect()
    }

    /// Sylvester inertia, exact.
    ///
    /// Fraction-free symmetric elimination: every intermediate entry is a minor
    /// of the (congruence-transformed) integer matrix, so each update divides
    /// exactly by the previous pivot. Pivots are taken from the diagonal; when
    /// the remaining diagonal is entirely zero but some off-diagonal `(p, q)`
    /// is not, row/column `q` is added to row/column `p`, a unimodular
    /// congruence that leaves `2·a_pq` on the diagonal.
    pub fn inertia(&self) -> Inertia {
        let mut a = self.integer_rows();
        let mut rest: Vec<usize> = (0..self.dim).collect();
        let mut prev = IBig::ONE;
        let mut out = Inertia::default();

        while !rest.is_empty() {
            let pivot = match rest.iter().position(|&p| !a[p][p].is_zero()) {
                Some(pos) => pos,
                None => {
                    let pair = rest.iter().enumerate().find_map(|(pi, &p)| {
                        rest.iter().find(|&&q| q != p && !a[p][q].is_zero()).map(|&q| (pi, p, q))
                    });
                    let Some((pi, p, q)) = pair else {
                        out.zero += rest.len();
                        break;
                    };
                    for &j in &rest {
                        let v = &a[q][j] + &a[p][j];
                        a[p][j] = v.clone();
                        a[j][p] = v;
                    }
                    // a[p][p] now holds a_pp + a_qp; add the column half too.
                    let v = &a[p][p] + &a[p][q];
                    a[p][p] = v;
                    pi
                }
            };
            let p = rest.swap_remove(pivot);
            let app = a[p][p].clone();
            if (app.sign() == Sign::Negative) != (prev.sign() == Sign::Negative) {
                out.negative += 1;
            } else {
                out.positive += 1;
            }
            for (x, &i) in rest.iter().enumerate() {
                for &j in &rest[x..] {
                    let v = (&app * &a[i][j] - &a[i][p] * &a[p][j]) / &prev;
                    a[i][j] = v.clone();
                    a[j][i] = v;
                }
            }
            prev = app;
        }
        out
    }

    /// True iff every eigenvalue is positive.
    pub fn is_positive_definite(&self) -> bool {
        self.inertia().positive == self.dim
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn int_matrix(rows: &[&[i64]]) -> SymmetricExactMatrix {
        SymmetricExactMatrix::from_rows(
            &rows.iter().map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn identity_and_diagonal() {
        let id = SymmetricExactMatrix::identity(2);
        assert_eq!(id.inertia(), Inertia { negative: 0, zero: 0, positive: 2 });
        let d = SymmetricExactMatrix::diagonal(&[rat(-1, 1), rat(0, 1), rat(3, 1)]);
        assert_eq!(d.inertia(), Inertia { negative: 1, zero: 1, positive: 1 });
    }

    #[test]
    fn zero_diagonal_needs_congruence() {
        // [[0,1],[1,0]] has eigenvalues ±1
        assert_eq!(
            int_matrix(&[&[0, 1], &[1, 0]]).inertia(),
            Inertia { negative: 1, zero: 0, positive: 1 }
        );
        // [[0,1,0],[1,0,0],[0,0,0]]
        assert_eq!(
            int_matrix(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]).inertia(),
            Inertia { negative: 1, zero: 1, positive: 1 }
        );
        // zero pivot appearing mid-elimination: [[1,1,0],[1,1,1],[0,1,1]]
        // eigenvalues 1, 1 ± √2
        assert_eq!(
            int_matrix(&[&[1, 1, 0], &[1, 1, 1], &[0, 1, 1]]).inertia(),
            Inertia { negative: 1, zero: 0, positive: 2 }
        );
    }

    #[test]
    fn singular_rank_one() {
        assert_eq!(
            int_matrix(&[&[1, 2], &[2, 4]]).inertia(),
            Inertia { negative: 0, zero: 1, positive: 1 }
        );
        assert_eq!(
            int_matrix(&[&[0, 0], &[0, 0]]).inertia(),
            Inertia { negative: 0, zero: 2, positive: 0 }
        );
    }

    #[test]
    fn hilbert_is_positive_definite() {
        let h = SymmetricExactMatrix::from_fn(12, |i, j| rat(1, (i + j + 1) as i64));
        assert!(h.is_positive_definite());
        let shifted = SymmetricExactMatrix::combination(&[
            (&rat(1, 1), &h),
            (&rat(-1, 1), &SymmetricExactMatrix::identity(12)),
        ]);
        // Only the largest Hilbert eigenvalue (≈1.795) exceeds 1.
        assert_eq!(shifted.inertia(), Inertia { negative: 11, zero: 0, positive: 1 });
    }
}
