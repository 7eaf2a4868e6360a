use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use dashu_base::{Abs, Gcd, Sign, Signed, UnsignedAbs};
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

use super::float::{float_from_rational, working_bits_for_digits, BigFloat, DEFAULT_PRECISION_BITS};
use super::scalar::{format_rational, round_significant, ExactScalar};
use crate::error::{Error, Result};

/// Univariate polynomial with exact rational coefficients, lowest power first.
///
/// Trailing zeros are always stripped, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExactPolynomial {
    coeffs: Vec<ExactScalar>,
}

impl ExactPolynomial {
    pub fn new(mut coeffs: Vec<ExactScalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| RBig::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ExactScalar) -> Self {
        Self::new(vec![c])
    }

    /// `a + b·x`
    pub fn linear(a: ExactScalar, b: ExactScalar) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[ExactScalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&ExactScalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        self.coeffs.iter().rev().fold(RBig::ZERO, |acc, c| acc * x + c)
    }

    /// Horner evaluation at a float; coefficients are rounded to `x`'s precision.
    pub fn eval_float(&self, x: &BigFloat) -> BigFloat {
        let bits = x.precision().max(DEFAULT_PRECISION_BITS);
        let mut acc = float_from_rational(&RBig::ZERO, bits);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + float_from_rational(c, bits);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * RBig::from(k))
                .collect(),
        )
    }

    pub fn scale(&self, s: &ExactScalar) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Positive rational multiple with coprime integer coefficients.
    pub fn primitive_integer(&self) -> Vec<IBig> {
        let lcm = self
            .coeffs
            .iter()
            .fold(UBig::ONE, |l, c| {
                let d = c.denominator();
                let g = (&l).gcd(d);
                l / g * d
            });
        let ints: Vec<IBig> = self
            .coeffs
            .iter()
            .map(|c| (c * RBig::from(lcm.clone())).numerator().clone())
            .collect();
        primitive(ints)
    }

    /// Cauchy bound: every real root lies strictly inside `(-B, B)`.
    pub fn root_bound(&self) -> ExactScalar {
        let Some(lead) = self.leading() else {
            return RBig::ONE;
        };
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / lead).abs())
            .max()
            .unwrap_or(RBig::ZERO);
        max + RBig::ONE
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn add(self, rhs: Self) -> ExactPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ExactPolynomial::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).cloned().unwrap_or(RBig::ZERO);
                    match rhs.coeffs.get(k) {
                        Some(b) => a + b,
                        None => a,
                    }
                })
                .collect(),
        )
    }
}

impl Neg for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn neg(self) -> ExactPolynomial {
        ExactPolynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl Sub for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn sub(self, rhs: Self) -> ExactPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn mul(self, rhs: Self) -> ExactPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return ExactPolynomial::zero();
        }
        let mut out = vec![RBig::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ExactPolynomial::new(out)
    }
}

fn primitive(mut p: Vec<IBig>) -> Vec<IBig> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let content = content(&p);
    if content > UBig::ONE {
        let content = IBig::from(content);
        for c in &mut p {
            *c = &*c / &content;
        }
    }
    p
}

/// gcd of the absolute values of the nonzero entries; zero if all vanish.
pub(crate) fn content(p: &[IBig]) -> UBig {
    p.iter().filter(|c| !c.is_zero()).fold(UBig::ZERO, |g, c| {
        if g.is_zero() {
            c.unsigned_abs()
        } else {
            g.gcd(c.unsigned_abs())
        }
    })
}

fn int_derivative(p: &[IBig]) -> Vec<IBig> {
    p.iter().enumerate().skip(1).map(|(k, c)| c * IBig::from(k)).collect()
}

/// `sign(p(u/v))` for an integer polynomial, evaluated as `v^d·p(u/v)` so
/// that only integer arithmetic is involved.
pub(crate) fn int_sign_at(p: &[IBig], x: &ExactScalar) -> Sign {
    homogeneous_value(p, x).sign()
}

fn homogeneous_value(p: &[IBig], x: &ExactScalar) -> IBig {
    let u = x.numerator();
    let v = IBig::from(x.denominator().clone());
    let mut acc = IBig::ZERO;
    let mut vpow = IBig::ONE;
    for c in p.iter().rev() {
        acc = acc * u + c * &vpow;
        vpow *= &v;
    }
    acc
}

fn is_zero_at(p: &[IBig], x: &ExactScalar) -> bool {
    !p.is_empty() && homogeneous_value(p, x).is_zero()
}

/// `lc(b)^k·a − q·b` with `k` the number of reduction steps performed.
/// Returns the remainder and whether the accumulated factor `lc(b)^k` is negative.
fn pseudo_remainder(a: &[IBig], b: &[IBig]) -> (Vec<IBig>, bool) {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = a.to_vec();
    let mut steps = 0usize;
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (k, bk) in b.iter().enumerate() {
            r[dr - db + k] -= &lr * bk;
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        steps += 1;
    }
    (r, lb.is_negative() && steps % 2 == 1)
}

/// Sturm chain `p, p', −rem(p, p'), …` over the integers, each member reduced
/// to its primitive part (positive content only, so signs are preserved).
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<Vec<IBig>>,
}

impl SturmSequence {
    pub fn new(p: &ExactPolynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let p0 = p.primitive_integer();
        let p1 = primitive(int_derivative(&p0));
        let mut chain = vec![p0];
        if !p1.is_empty() {
            chain.push(p1);
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let (r, flipped) = pseudo_remainder(&chain[n - 2], &chain[n - 1]);
            if r.is_empty() {
                break;
            }
            let next: Vec<IBig> = if flipped { r } else { r.into_iter().map(|c| -c).collect() };
            chain.push(primitive(next));
        }
        Ok(Self { chain })
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub(crate) fn base(&self) -> &[IBig] {
        &self.chain[0]
    }

    /// Number of sign changes of the chain at `x`, zeros skipped.
    pub fn variations_at(&self, x: &ExactScalar) -> usize {
        let mut count = 0;
        let mut last = Sign::Positive;
        let mut seen = false;
        for q in &self.chain {
            let v = homogeneous_value(q, x);
            if v.is_zero() {
                continue;
            }
            let s = v.sign();
            if seen && s != last {
                count += 1;
            }
            last = s;
            seen = true;
        }
        count
    }

    fn check_endpoints(&self, lo: &ExactScalar, hi: &ExactScalar) -> Result<()> {
        if lo >= hi {
            return Err(Error::InvalidArgument(format!("empty interval ({lo}, {hi})")));
        }
        for x in [lo, hi] {
            if is_zero_at(self.base(), x) {
                return Err(Error::EndpointIsRoot(x.to_string()));
            }
        }
        Ok(())
    }

    /// Distinct real roots in `(lo, hi)`; neither endpoint may be a root.
    pub fn count(&self, lo: &ExactScalar, hi: &ExactScalar) -> Result<usize> {
        self.check_endpoints(lo, hi)?;
        Ok(self.count_unchecked(lo, hi))
    }

    fn count_unchecked(&self, lo: &ExactScalar, hi: &ExactScalar) -> usize {
        self.variations_at(lo) - self.variations_at(hi)
    }

    /// A split point strictly inside `(lo, hi)` that is not a root.
    fn split(&self, lo: &ExactScalar, hi: &ExactScalar) -> ExactScalar {
        let width = hi - lo;
        for den in 2i64.. {
            for num in [den / 2, (den + 1) / 2] {
                if num <= 0 || num >= den {
                    continue;
                }
                let t = lo + &width * RBig::from_parts_signed(IBig::from(num), IBig::from(den));
                if !is_zero_at(self.base(), &t) {
                    return t;
                }
            }
        }
        unreachable!()
    }

    /// Disjoint isolating intervals for every distinct root in `(lo, hi)`, ascending.
    pub fn isolate(&self, lo: &ExactScalar, hi: &ExactScalar) -> Result<Vec<IsolatedRoot>> {
        self.check_endpoints(lo, hi)?;
        let mut out = Vec::new();
        let mut stack = vec![(lo.clone(), hi.clone(), self.count_unchecked(lo, hi))];
        while let Some((a, b, n)) = stack.pop() {
            match n {
                0 => {}
                1 => out.push(IsolatedRoot { lo: a, hi: b }),
                _ => {
                    let m = self.split(&a, &b);
                    let left = self.count_unchecked(&a, &m);
                    stack.push((m.clone(), b, n - left));
                    stack.push((a, m, left));
                }
            }
        }
        out.sort_by(|x, y| x.lo.cmp(&y.lo));
        Ok(out)
    }

    /// Shrink an isolating interval until both ends round to the same
    /// `digits`-digit decimal (or the root is hit exactly).
    pub fn refine(&self, root: &IsolatedRoot, digits: usize) -> IsolatedRoot {
        let p = self.base();
        let (mut a, mut b) = (root.lo.clone(), root.hi.clone());
        if a == b {
            return root.clone();
        }
        let sa = int_sign_at(p, &a);
        let sign_change = sa != int_sign_at(p, &b);
        // Past this width the root sits on a rounding boundary; stop anyway.
        let floor_bits = 4 * working_bits_for_digits(digits);
        for _ in 0..floor_bits + 4096 {
            if round_significant(&a, digits) == round_significant(&b, digits) {
                break;
            }
            let scale = a.clone().abs().max(b.clone().abs()).max(RBig::ONE);
            if (&b - &a) * RBig::from(UBig::ONE << floor_bits) < scale {
                break;
            }
            let m = (&a + &b) / RBig::from(2u8);
            if sign_change {
                let vm = homogeneous_value(p, &m);
                if vm.is_zero() {
                    return IsolatedRoot { lo: m.clone(), hi: m };
                }
                if vm.sign() == sa {
                    a = m;
                } else {
                    b = m;
                }
            } else {
                let m = self.split(&a, &b);
                if self.count_unchecked(&a, &m) == 1 {
                    b = m;
                } else {
                    a = m;
                }
            }
        }
        IsolatedRoot { lo: a, hi: b }
    }
}

/// A real root known to lie in `[lo, hi]` (`lo == hi` when hit exactly).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub lo: ExactScalar,
    pub hi: ExactScalar,
}

impl IsolatedRoot {
    pub fn midpoint(&self) -> ExactScalar {
        (&self.lo + &self.hi) / RBig::from(2u8)
    }

    pub fn width(&self) -> ExactScalar {
        &self.hi - &self.lo
    }

    pub fn to_float(&self, bits: usize) -> BigFloat {
        float_from_rational(&self.midpoint(), bits)
    }

    /// The root printed to `digits` significant digits.
    pub fn format(&self, digits: usize) -> String {
        format_rational(&self.midpoint(), digits)
    }
}

/// Exact number of distinct real roots of `p` in `(lo, hi)`.
pub fn sturm_count(p: &ExactPolynomial, lo: &ExactScalar, hi: &ExactScalar) -> Result<usize> {
    SturmSequence::new(p)?.count(lo, hi)
}

/// All distinct real roots of `p` in `(lo, hi)`, ascending, each correct to
/// `digits` significant digits.
pub fn isolate_real_roots(
    p: &ExactPolynomial,
    lo: &ExactScalar,
    hi: &ExactScalar,
    digits: usize,
) -> Result<Vec<BigFloat>> {
    if digits == 0 {
        return Err(Error::InvalidArgument("digits must be at least 1".into()));
    }
    let sturm = SturmSequence::new(p)?;
    let bits = working_bits_for_digits(digits).max(DEFAULT_PRECISION_BITS);
    Ok(sturm
        .isolate(lo, hi)?
        .iter()
        .map(|r| sturm.refine(r, digits).to_float(bits))
        .collect())
}
