//! Exact scalar types.
//!
//! Every computation in this crate is exact, so the scalar abstraction covers
//! rational fields only. `BigRational` is the default; the fixed-width ratios
//! are useful for small graphs where speed matters more than headroom.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive};

/// An exact ordered field.
pub trait Scalar: Clone + Debug + Display + Ord + Num + Signed + Send + Sync + 'static {
    fn from_i64(value: i64) -> Self;

    fn is_integral(&self) -> bool;

    /// The value as an `i64`, if it is an integer that fits.
    fn to_integer(&self) -> Option<i64>;
}

macro_rules! impl_scalar_fixed {
    ($int:ty) => {
        impl Scalar for Ratio<$int> {
            fn from_i64(value: i64) -> Self {
                Ratio::from_integer(<$int>::from(value))
            }

            fn is_integral(&self) -> bool {
                self.is_integer()
            }

            fn to_integer(&self) -> Option<i64> {
                if self.is_integer() {
                    self.numer().to_i64()
                } else {
                    None
                }
            }
        }
    };
}

impl_scalar_fixed!(i64);
impl_scalar_fixed!(i128);

impl Scalar for Ratio<BigInt> {
    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(BigInt::from(value))
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn to_integer(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::{BigRational, Rational64};

    fn roundtrip<T: Scalar>() {
        let third = T::from_i64(1) / T::from_i64(3);
        assert!(!third.is_integral());
        assert_eq!(third.to_integer(), None);
        let six = T::from_i64(-6);
        assert!(six.is_integral());
        assert_eq!(six.to_integer(), Some(-6));
    }

    #[test]
    fn integrality_across_backends() {
        roundtrip::<BigRational>();
        roundtrip::<Rational64>();
        roundtrip::<Ratio<i128>>();
    }
}
