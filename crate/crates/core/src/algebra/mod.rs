//! Exact scalars, dense polynomials and truncated power series.

mod poly;
mod series;

pub use poly::RationalPolynomial;
pub use series::TruncatedSeries;

pub use num_bigint::BigInt;
use num_traits::One;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `(-1)^n` as a small integer.
pub fn sign(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
