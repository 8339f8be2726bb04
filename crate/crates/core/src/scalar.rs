//! Scalar types. Floating work is pinned to [`Real`]; the polynomial engine
//! is generic over [`Coeff`] so the same code runs on exact rationals and on
//! floats.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// The floating scalar used throughout the numerical modules.
pub type Real = f64;

/// Exact rational scalar used by the symbolic polynomial engine.
pub type Rational = BigRational;

/// Coefficient ring for symbolic polynomials.
///
/// Implemented by [`Rational`] (exact lane) and by [`Real`] (floating
/// fallback for irrational multiplicities).
pub trait Coeff:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_int(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_real(&self) -> Real;
    /// Exact comparison for rationals, tolerance-free equality for floats.
    fn is_exactly_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Coeff for Rational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(num.into(), den.into())
    }
    fn to_real(&self) -> Real {
        self.to_f64().expect("rational out of f64 range")
    }
}

impl Coeff for Real {
    fn from_int(n: i64) -> Self {
        n as Real
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as Real / den as Real
    }
    fn to_real(&self) -> Real {
        *self
    }
}

/// Absolute value helper usable in generic code.
pub fn coeff_abs<C: Coeff>(c: &C) -> Real
where
    C: Signed,
{
    c.abs().to_real()
}
