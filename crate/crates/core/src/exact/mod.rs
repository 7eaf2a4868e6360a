//! Exact arithmetic substrate.
//!
//! Every matrix and polynomial in this crate is assembled over the rationals.
//! Floating point ([`BigFloat`]) only appears when a certified quantity is
//! refined or printed.

mod bernstein;
mod float;
mod matrix;
mod poly;
mod scalar;

pub use bernstein::count_roots_in_unit_interval;
pub use float::{
    float_from_int, float_from_rational, float_pow2, float_to_rational, working_bits_for_digits, BigFloat,
    DEFAULT_PRECISION_BITS,
};
pub use matrix::{Inertia, SymmetricExactMatrix};
pub use poly::{isolate_real_roots, sturm_count, ExactPolynomial, IsolatedRoot, SturmSequence};
pub use scalar::{
    decimal_exponent, format_rational, parse_decimal, pow10, rat, round_significant, ExactScalar, DEFAULT_DIGITS,
};
