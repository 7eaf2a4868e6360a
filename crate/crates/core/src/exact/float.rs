use dashu_float::{round::mode::HalfEven, Context, FBig, Repr};
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

use super::ExactScalar;

/// Binary arbitrary-precision float, rounding half-to-even.
///
/// Every value carries its precision (in bits); arithmetic between values of
/// different precision runs at the larger one.
pub type BigFloat = FBig<HalfEven, 2>;

pub const DEFAULT_PRECISION_BITS: usize = 256;

/// Bits needed to carry `digits` decimal digits plus a comfortable guard.
pub fn working_bits_for_digits(digits: usize) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64
}

pub fn float_from_int(n: impl Into<IBig>, bits: usize) -> BigFloat {
    Context::<HalfEven>::new(bits).convert_int::<2>(n.into()).value()
}

/// `2^exp` carrying `bits` of precision.
pub fn float_pow2(exp: isize, bits: usize) -> BigFloat {
    BigFloat::from_repr(Repr::new(IBig::ONE, exp), Context::new(bits))
}

/// Correctly rounded conversion of a rational.
pub fn float_from_rational(x: &ExactScalar, bits: usize) -> BigFloat {
    let num = Repr::<2>::from(x.numerator().clone());
    let den = Repr::<2>::from(IBig::from(x.denominator().clone()));
    Context::<HalfEven>::new(bits).div(&num, &den).value()
}

/// Exact value of a (finite) binary float.
pub fn float_to_rational(x: &BigFloat) -> ExactScalar {
    assert!(x.repr().is_finite(), "cannot rationalize an infinite float");
    let sig = x.repr().significand().clone();
    let exp = x.repr().exponent();
    if exp >= 0 {
        RBig::from(sig << exp as usize)
    } else {
        RBig::from_parts(sig, UBig::ONE << (-exp) as usize)
    }
}
