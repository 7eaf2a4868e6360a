//! Dense symmetric linear algebra in [`BigFloat`] at a fixed working precision.
//!
//! Used only to find candidate eigenvalues quickly; every value that leaves
//! the crate is certified by an exact inertia count.

use dashu_base::{Sign, SquareRoot};

use crate::error::{Error, Result};
use crate::exact::{float_from_int, float_pow2, BigFloat};

/// Square row-major matrix.
#[derive(Clone, Debug)]
pub(crate) struct FloatMatrix {
    n: usize,
    a: Vec<BigFloat>,
}

/// `|x|`.
pub fn abs(x: &BigFloat) -> BigFloat {
    if x.sign() == Sign::Negative {
        -x.clone()
    } else {
        x.clone()
    }
}

impl FloatMatrix {
    pub fn from_rows(rows: Vec<Vec<BigFloat>>) -> Self {
        let n = rows.len();
        Self { n, a: rows.into_iter().flatten().collect() }
    }

    pub fn zeros(n: usize, bits: usize) -> Self {
        Self { n, a: vec![float_from_int(0, bits); n * n] }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigFloat {
        &self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigFloat) {
        self.a[i * self.n + j] = v;
    }

    /// `self − s·other`.
    pub fn sub_scaled(&self, s: &BigFloat, other: &FloatMatrix) -> FloatMatrix {
        let a = self.a.iter().zip(&other.a).map(|(x, y)| x - s * y).collect();
        FloatMatrix { n: self.n, a }
    }

    /// Lower Cholesky factor `G` with `self = G·Gᵀ`.
    pub fn cholesky(&self) -> Result<FloatMatrix> {
        let n = self.n;
        let bits = self.get(0, 0).precision();
        let mut g = FloatMatrix::zeros(n, bits);
        for j in 0..n {
            let mut d = self.get(j, j).clone();
            for k in 0..j {
                d -= g.get(j, k) * g.get(j, k);
            }
            if d.sign() != Sign::Positive || d.repr().is_zero() {
                return Err(Error::NotPositiveDefinite(format!(
                    "Cholesky pivot {j} is not positive at {bits} bits"
                )));
            }
            let djj = d.sqrt();
            for i in j + 1..n {
                let mut s = self.get(i, j).clone();
                for k in 0..j {
                    s -= g.get(i, k) * g.get(j, k);
                }
                g.set(i, j, s / &djj);
            }
            g.set(j, j, djj);
        }
        Ok(g)
    }

    /// `G⁻¹·self·G⁻ᵀ` for lower-triangular `G`, symmetrized.
    pub fn congruence_by_inverse(&self, g: &FloatMatrix) -> FloatMatrix {
        let n = self.n;
        // X = G⁻¹·self, column by column
        let x = g.forward_solve_columns(self);
        // K = G⁻¹·Xᵀ  (Xᵀ = self·G⁻ᵀ)
        let xt = x.transpose();
        let mut k = g.forward_solve_columns(&xt);
        for i in 0..n {
            for j in 0..i {
                let v = (k.get(i, j) + k.get(j, i)) / float_from_int(2, k.get(i, j).precision());
                k.set(i, j, v.clone());
                k.set(j, i, v);
            }
        }
        k
    }

    fn transpose(&self) -> FloatMatrix {
        let n = self.n;
        let mut t = self.clone();
        for i in 0..n {
            for j in 0..n {
                t.set(i, j, self.get(j, i).clone());
            }
        }
        t
    }

    /// Solves `G·X = B` for lower-triangular `G` (self).
    fn forward_solve_columns(&self, b: &FloatMatrix) -> FloatMatrix {
        let n = self.n;
        let mut x = b.clone();
        for c in 0..n {
            for i in 0..n {
                let mut s = b.get(i, c).clone();
                for k in 0..i {
                    s -= self.get(i, k) * x.get(k, c);
                }
                x.set(i, c, s / self.get(i, i));
            }
        }
        x
    }

    /// Solves `Gᵀ·x = y` for lower-triangular `G` (self).
    pub fn back_solve_transposed(&self, y: &[BigFloat]) -> Vec<BigFloat> {
        let n = self.n;
        let mut x = y.to_vec();
        for i in (0..n).rev() {
            let mut s = y[i].clone();
            for k in i + 1..n {
                s -= self.get(k, i) * &x[k];
            }
            x[i] = s / self.get(i, i);
        }
        x
    }

    pub fn mul_vec(&self, x: &[BigFloat]) -> Vec<BigFloat> {
        let bits = x[0].precision();
        (0..self.n)
            .map(|i| (0..self.n).fold(float_from_int(0, bits), |s, j| s + self.get(i, j) * &x[j]))
            .collect()
    }

    /// Householder reduction to tridiagonal form; returns `(diagonal, offdiagonal)`.
    pub fn tridiagonalize(&self) -> Tridiagonal {
        let n = self.n;
        let bits = self.get(0, 0).precision();
        let zero = float_from_int(0, bits);
        let two = float_from_int(2, bits);
        let mut a = self.clone();
        let mut off = Vec::with_capacity(n.saturating_sub(1));
        for k in 0..n.saturating_sub(2) {
            let m = n - k - 1;
            let mut v: Vec<BigFloat> = (0..m).map(|i| a.get(k + 1 + i, k).clone()).collect();
            let norm2 = v.iter().fold(zero.clone(), |s, x| s + x * x);
            if norm2.repr().is_zero() {
                off.push(zero.clone());
                continue;
            }
            let norm = norm2.sqrt();
            let alpha = if v[0].sign() == Sign::Negative { norm } else { -norm };
            v[0] = &v[0] - &alpha;
            let vv = v.iter().fold(zero.clone(), |s, x| s + x * x);
            if vv.repr().is_zero() {
                off.push(alpha);
                continue;
            }
            let scale = &two / &vv;
            // p = scale · A_sub · v
            let p: Vec<BigFloat> = (0..m)
                .map(|i| {
                    let s = (0..m).fold(zero.clone(), |s, j| s + a.get(k + 1 + i, k + 1 + j) * &v[j]);
                    s * &scale
                })
                .collect();
            let vp = v.iter().zip(&p).fold(zero.clone(), |s, (x, y)| s + x * y);
            let kk = &vp * &scale / &two;
            let q: Vec<BigFloat> = p.iter().zip(&v).map(|(pi, vi)| pi - &kk * vi).collect();
            for i in 0..m {
                for j in 0..=i {
                    let upd = a.get(k + 1 + i, k + 1 + j) - &v[i] * &q[j] - &q[i] * &v[j];
                    a.set(k + 1 + i, k + 1 + j, upd.clone());
                    a.set(k + 1 + j, k + 1 + i, upd);
                }
            }
            off.push(alpha);
        }
        if n >= 2 {
            off.push(a.get(n - 1, n - 2).clone());
        }
        let diag = (0..n).map(|i| a.get(i, i).clone()).collect();
        Tridiagonal::new(diag, off)
    }

    /// Solves `(self − shift·I)·x = b` by Gaussian elimination with partial pivoting.
    pub fn shifted_solve(&self, shift: &BigFloat, b: &[BigFloat], tiny: &BigFloat) -> Vec<BigFloat> {
        let n = self.n;
        let mut m: Vec<Vec<BigFloat>> = (0..n)
            .map(|i| {
                (0..n).map(|j| if i == j { self.get(i, j) - shift } else { self.get(i, j).clone() }).collect()
            })
            .collect();
        let mut x = b.to_vec();
        for c in 0..n {
            let piv = (c..n).max_by(|&i, &j| abs(&m[i][c]).cmp(&abs(&m[j][c]))).expect("non-empty");
            m.swap(c, piv);
            x.swap(c, piv);
            if abs(&m[c][c]) < *tiny {
                m[c][c] = tiny.clone();
            }
            for r in c + 1..n {
                let f = &m[r][c] / &m[c][c];
                if f.repr().is_zero() {
                    continue;
                }
                for k in c..n {
                    let v = &m[r][k] - &f * &m[c][k];
                    m[r][k] = v;
                }
                let v = &x[r] - &f * &x[c];
                x[r] = v;
            }
        }
        for i in (0..n).rev() {
            let mut s = x[i].clone();
            for k in i + 1..n {
                s -= &m[i][k] * &x[k];
            }
            x[i] = s / &m[i][i];
        }
        x
    }
}

/// Symmetric tridiagonal matrix.
#[derive(Clone, Debug)]
pub(crate) struct Tridiagonal {
    diag: Vec<BigFloat>,
    off_sq: Vec<BigFloat>,
    off_abs: Vec<BigFloat>,
}

impl Tridiagonal {
    fn new(diag: Vec<BigFloat>, off: Vec<BigFloat>) -> Self {
        let off_sq = off.iter().map(|e| e * e).collect();
        let off_abs = off.iter().map(abs).collect();
        Self { diag, off_sq, off_abs }
    }

    /// Eigenvalues strictly below `x` (Sturm count on the LDLᵀ pivots).
    pub fn count_below(&self, x: &BigFloat, tiny: &BigFloat) -> usize {
        let mut count = 0;
        let mut q = &self.diag[0] - x;
        for i in 0..self.diag.len() {
            if i > 0 {
                q = &self.diag[i] - x - &self.off_sq[i - 1] / &q;
            }
            if q.repr().is_zero() {
                q = -tiny.clone();
            }
            if q.sign() == Sign::Negative {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing every eigenvalue.
    pub fn bounds(&self) -> (BigFloat, BigFloat) {
        let n = self.diag.len();
        let mut lo = self.diag[0].clone();
        let mut hi = self.diag[0].clone();
        for i in 0..n {
            let mut r = float_from_int(0, self.diag[i].precision());
            if i > 0 {
                r += &self.off_abs[i - 1];
            }
            if i + 1 < n {
                r += &self.off_abs[i];
            }
            let a = &self.diag[i] - &r;
            let b = &self.diag[i] + &r;
            if a < lo {
                lo = a;
            }
            if b > hi {
                hi = b;
            }
        }
        (lo, hi)
    }

    /// Eigenvalue `k` (0-based, ascending) by bisection until the bracket is
    /// narrower than `2^-rel_bits · max(1, |λ|)`.
    pub fn eigenvalue(&self, k: usize, rel_bits: usize) -> BigFloat {
        let (mut lo, mut hi) = self.bounds();
        let bits = lo.precision();
        let scale_unit = float_from_int(1, bits);
        let two = float_from_int(2, bits);
        let tiny = float_pow2(-(bits as isize), bits) * (abs(&lo) + abs(&hi) + &scale_unit);
        let eps = float_pow2(-(rel_bits as isize), bits);
        for _ in 0..4 * bits + 64 {
            let mag = abs(&lo).max(abs(&hi)).max(scale_unit.clone());
            if &hi - &lo <= &eps * &mag {
                break;
            }
            let mid = (&lo + &hi) / &two;
            if mid == lo || mid == hi {
                break;
            }
            if self.count_below(&mid, &tiny) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (&lo + &hi) / two
    }
}
