//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

/// Arbitrary-precision rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d`, reduced. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

/// The value as `i64` if it is an integer that fits.
pub fn to_i64(q: &Rational) -> Option<i64> {
    if !is_integer(q) {
        return None;
    }
    i64::try_from(q.numer()).ok()
}

pub fn pow(q: &Rational, e: i32) -> Rational {
    if e >= 0 {
        num_traits::pow(q.clone(), e as usize)
    } else {
        num_traits::pow(q.recip(), (-e) as usize)
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn sign_str(q: &Rational) -> (&'static str, Rational) {
    if q.is_negative() {
        ("-", -q.clone())
    } else {
        ("+", q.clone())
    }
}
