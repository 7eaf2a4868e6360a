//! Root counting on the open unit interval by Bernstein-basis subdivision.
//!
//! The number of sign variations of the Bernstein coefficients bounds the
//! number of roots in `(0, 1)` and has the same parity, so 0 or 1 variations
//! are exact counts. Anything larger is split with de Casteljau and recounted.
//! Splitting is done on integer coefficients without any division.

use dashu_base::{Gcd, Sign};
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

use super::poly::{content, ExactPolynomial};
use crate::error::{Error, Result};

const MAX_DEPTH: usize = 96;

/// Number of distinct real roots of `p` in the open interval `(0, 1)`.
///
/// Roots at `0` or `1` are not counted. Fails on the zero polynomial and when
/// a root cluster cannot be separated (a multiple root inside the interval).
pub fn count_roots_in_unit_interval(p: &ExactPolynomial) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = deflate_endpoints(p);
    if p.degree() == Some(0) {
        return Ok(0);
    }
    count(to_bernstein(&p), 0)
}

/// Divide out factors of `x` and `1 − x`.
fn deflate_endpoints(p: &ExactPolynomial) -> ExactPolynomial {
    let mut c = p.coeffs().to_vec();
    while c.first().is_some_and(|a| a.is_zero()) {
        c.remove(0);
    }
    let mut p = ExactPolynomial::new(c);
    loop {
        let at_one = p.coeffs().iter().fold(RBig::ZERO, |s, a| s + a);
        if !at_one.is_zero() || p.degree() == Some(0) {
            return p;
        }
        // synthetic division by (x − 1); the sign of the quotient is irrelevant
        let c = p.coeffs();
        let n = c.len() - 1;
        let mut q = vec![RBig::ZERO; n];
        let mut carry = RBig::ZERO;
        for k in (1..=n).rev() {
            carry += &c[k];
            q[k - 1] = carry.clone();
        }
        p = ExactPolynomial::new(q);
    }
}

/// Bernstein coefficients on `[0, 1]`, scaled to coprime integers (positive scale).
fn to_bernstein(p: &ExactPolynomial) -> Vec<IBig> {
    let a = p.coeffs();
    let n = a.len() - 1;
    let binom = binomial_rows(n);
    let b: Vec<RBig> = (0..=n)
        .map(|k| {
            (0..=k).fold(RBig::ZERO, |s, i| {
                s + &a[i] * RBig::from(binom[k][i].clone()) / RBig::from(binom[n][i].clone())
            })
        })
        .collect();
    let lcm = b.iter().fold(UBig::ONE, |l, c| {
        let g = (&l).gcd(c.denominator());
        l / g * c.denominator()
    });
    let ints: Vec<IBig> = b
        .iter()
        .map(|c| (c * RBig::from(lcm.clone())).numerator().clone())
        .collect();
    let content = content(&ints);
    if content <= UBig::ONE {
        return ints;
    }
    let content = IBig::from(content);
    ints.into_iter().map(|c| c / &content).collect()
}

fn binomial_rows(n: usize) -> Vec<Vec<UBig>> {
    let mut rows: Vec<Vec<UBig>> = vec![vec![UBig::ONE]];
    for k in 1..=n {
        let prev = &rows[k - 1];
        let mut row = vec![UBig::ONE; k + 1];
        for i in 1..k {
            row[i] = &prev[i - 1] + &prev[i];
        }
        rows.push(row);
    }
    rows
}

fn variations(b: &[IBig]) -> usize {
    let mut last: Option<Sign> = None;
    let mut v = 0;
    for c in b.iter().filter(|c| !c.is_zero()) {
        let s = c.sign();
        if last.is_some_and(|l| l != s) {
            v += 1;
        }
        last = Some(s);
    }
    v
}

/// De Casteljau split at `t = num/den`, both halves scaled by `den^n`.
fn split(b: &[IBig], num: u32, den: u32) -> (Vec<IBig>, Vec<IBig>) {
    let n = b.len() - 1;
    let (p, q) = (IBig::from(num), IBig::from(den - num));
    let mut level = b.to_vec();
    let mut left = Vec::with_capacity(n + 1);
    let mut right_rev = Vec::with_capacity(n + 1);
    left.push(level[0].clone());
    right_rev.push(level[n].clone());
    for j in 1..=n {
        for i in 0..=n - j {
            level[i] = &q * &level[i] + &p * &level[i + 1];
        }
        left.push(level[0].clone());
        right_rev.push(level[n - j].clone());
    }
    // Level j carries a factor den^j; restore a uniform den^n scale.
    let d = IBig::from(den);
    for (j, c) in left.iter_mut().enumerate() {
        *c *= d.pow(n - j);
    }
    let mut right: Vec<IBig> = right_rev.into_iter().rev().collect();
    for (k, c) in right.iter_mut().enumerate() {
        *c *= d.pow(k);
    }
    (left, right)
}

fn count(b: Vec<IBig>, depth: usize) -> Result<usize> {
    match variations(&b) {
        0 => return Ok(0),
        1 => return Ok(1),
        _ => {}
    }
    if depth >= MAX_DEPTH {
        return Err(Error::PrecisionExhausted {
            what: "root count on (0, 1): roots not separable".into(),
            bits: depth,
        });
    }
    for (num, den) in [(1, 2), (1, 3), (2, 3), (2, 5), (3, 5), (3, 7), (4, 7)] {
        let (left, right) = split(&b, num, den);
        if left.last().is_some_and(|c| c.is_zero()) {
            continue;
        }
        return Ok(count(left, depth + 1)? + count(right, depth + 1)?);
    }
    unreachable!("a nonzero polynomial vanishes at seven distinct points")
}
