//! Scalar abstraction shared by the linear programs and the closed-form bounds.
//!
//! Exact computations run over [`BigRational`]; `f64`/`f32` instantiations exist
//! for quick floating-point estimates and use an absolute tolerance when
//! deciding signs.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive
{
    /// Magnitude at or below which a value counts as zero. Zero for exact types.
    fn epsilon() -> Self;

    /// Whether arithmetic is exact (no rounding).
    fn is_exact() -> bool;

    /// Largest integer not greater than `self`.
    fn floor_value(&self) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every scalar represents small integers")
    }

    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_int(num) / Self::from_int(den)
    }

    fn is_pos(&self) -> bool {
        *self > Self::epsilon()
    }

    fn is_neg(&self) -> bool {
        *self < -Self::epsilon()
    }

    fn is_negligible(&self) -> bool {
        !self.is_pos() && !self.is_neg()
    }

    /// Equality up to [`Scalar::epsilon`].
    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_negligible()
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }
}

impl Scalar for BigRational {
    fn epsilon() -> Self {
        BigRational::from_integer(BigInt::from(0))
    }

    fn is_exact() -> bool {
        true
    }

    fn floor_value(&self) -> Self {
        self.floor()
    }

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

impl Scalar for f64 {
    fn epsilon() -> Self {
        1e-9
    }

    fn is_exact() -> bool {
        false
    }

    fn floor_value(&self) -> Self {
        // values within tolerance of an integer floor to that integer
        (self + Self::epsilon()).floor()
    }
}

impl Scalar for f32 {
    fn epsilon() -> Self {
        1e-5
    }

    fn is_exact() -> bool {
        false
    }

    fn floor_value(&self) -> Self {
        (self + Self::epsilon()).floor()
    }
}

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str_radix(num.trim(), 10).ok()?;
            let den = BigInt::from_str_radix(den.trim(), 10).ok()?;
            if den == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(num, den))
        }
        None => BigInt::from_str_radix(text, 10)
            .ok()
            .map(BigRational::from_integer),
    }
}

/// Formats a rational as `"p/q"`, always with an explicit denominator.
pub fn format_rational(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}
