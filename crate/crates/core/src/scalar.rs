//! Scalar traits shared by every coefficient domain.
//!
//! The whole library is generic over an exact commutative ring built from the
//! `num-traits` vocabulary (`Zero`, `One` plus the std ops). Concrete scalars
//! are `Rat`, `FqElt`, `CycElt` and `MPoly<F>`; aliases for the common
//! instantiations live at the crate root.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rat::Rat;

/// Exact commutative ring element. Values are immutable; every operation is a
/// pure function, so implementations are safe to share across threads.
pub trait Ring:
    Sized
    + Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + 'static
{
    /// Multiply by an exact rational scalar.
    ///
    /// Panics when the scalar has no meaning in the ring (e.g. a denominator
    /// divisible by the characteristic).
    fn scale_rat(&self, by: &Rat) -> Self;

    fn from_int(n: i64) -> Self {
        Self::one().scale_rat(&Rat::from_int(n))
    }

    fn pow_u(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base.clone();
            e >>= 1;
        }
        acc
    }
}

/// Exact division in an integral domain: `Some(q)` with `self = q * den`, or
/// `None` when `den` does not divide `self` (or is zero).
pub trait ExactDiv: Sized {
    fn exact_div(&self, den: &Self) -> Option<Self>;
}

pub trait Field: Ring + Div<Output = Self> {
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_u_small() {
        assert_eq!(Rat::from_int(3).pow_u(0), Rat::one());
        assert_eq!(Rat::from_int(3).pow_u(5), Rat::from_int(243));
        assert_eq!(Rat::zero().pow_u(3), Rat::zero());
    }
}
