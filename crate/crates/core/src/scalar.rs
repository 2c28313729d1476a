//! Exact coefficient scalars for cyclotomic arithmetic.
//!
//! Everything in [`crate::cyclotomic`] is generic over [`ExactScalar`], a thin
//! extension of `num_traits` that adds the few conversions the integrality
//! tests need. Implementations are provided for `Ratio<i64>`, `Ratio<i128>`
//! and `Ratio<BigInt>`.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive};

pub trait ExactScalar:
    Clone + Debug + PartialEq + Num + Signed + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn is_integral(&self) -> bool;

    /// The value as an `i64` when it is an integer that fits.
    fn to_int(&self) -> Option<i64>;

    fn to_f64(&self) -> f64;

    /// `"p/q"` with `q > 0`, always including the denominator.
    fn to_ratio_string(&self) -> String;
}

macro_rules! impl_primitive_ratio {
    ($int:ty) => {
        impl ExactScalar for Ratio<$int> {
            fn from_int(v: i64) -> Self {
                Ratio::from_integer(v as $int)
            }

            fn from_ratio(numer: i64, denom: i64) -> Self {
                Ratio::new(numer as $int, denom as $int)
            }

            fn is_integral(&self) -> bool {
                self.is_integer()
            }

            fn to_int(&self) -> Option<i64> {
                if self.is_integer() {
                    self.numer().to_i64()
                } else {
                    None
                }
            }

            fn to_f64(&self) -> f64 {
                ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
            }

            fn to_ratio_string(&self) -> String {
                format!("{}/{}", self.numer(), self.denom())
            }
        }
    };
}

impl_primitive_ratio!(i64);
impl_primitive_ratio!(i128);

impl ExactScalar for Ratio<BigInt> {
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(BigInt::from(v))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn to_int(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_ratio_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

/// `true` when `v` is an integer that is also even.
pub fn is_even<T: ExactScalar>(v: &T) -> bool {
    let two = T::from_int(2);
    v.is_integral() && (v.clone() / two).is_integral()
}

pub(crate) fn is_one<T: ExactScalar>(v: &T) -> bool {
    v.is_one()
}

pub(crate) fn is_zero<T: ExactScalar>(v: &T) -> bool {
    v.is_zero()
}
