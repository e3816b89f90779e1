//! Exact rationals used for Euler numbers and orbifold Euler characteristics.

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Renders a rational as `p/q`, including integers (`0/1`, `-2/1`).
pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub(crate) fn from_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub(crate) fn ratio(n: &BigInt, d: &BigInt) -> Rational {
    Rational::new(n.clone(), d.clone())
}
