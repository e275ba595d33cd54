//! Scalar arithmetic, dense polynomials and real-root isolation.

mod parse;
mod poly;
mod roots;
mod scalar;

pub use parse::parse_scalar;
pub use poly::Polynomial;
pub use roots::{isolate_roots, simplest_rational_between, Root, RootList, MAX_ISOLATION_DEGREE};
pub use scalar::{format_decimal, zero_width_threshold, Ball, Scalar, ZeroTest, DEFAULT_PRECISION_BITS};

use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumericError {
    #[error("division by zero (or by a ball that contains zero)")]
    DivisionByZero,
    #[error("square root of a negative number")]
    NegativeSqrt,
    #[error("sign of an enclosure is ambiguous")]
    AmbiguousSign,
    #[error("value is not finite")]
    NonFinite,
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
    #[error("polynomial degree {0} exceeds the isolation limit of {MAX_ISOLATION_DEGREE}")]
    DegreeTooHigh(usize),
    #[error("empty interval: lower end is not below upper end")]
    EmptyInterval,
    #[error("tolerance must be positive")]
    BadTolerance,
}

/// `10^-k` as an exact rational.
pub fn ten_pow_neg(k: u32) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(10u32).pow(k))
}

/// Default absolute width for refined root enclosures.
pub fn default_root_tolerance() -> Scalar {
    Scalar::Rational(ten_pow_neg(20))
}
