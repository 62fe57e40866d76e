//! Scalar backends: IEEE double precision and exact arbitrary-precision rationals.
//!
//! Algebraic identity checks run on [`Rat`] where arithmetic is closed and
//! exact; quadrature, root refinement and asymptotics run on `f64` where
//! every comparison carries an explicit tolerance.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar (arbitrary-precision numerator and denominator).
pub type Rat = num_rational::BigRational;

/// Which arithmetic a [`Scalar`] implementation performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Float64,
    ExactRational,
}

/// Common interface of the two scalar backends.
///
/// Implementations must form a field under the `std::ops` bounds; the
/// rational backend is exact, the float backend rounds.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Debug
    + Display
{
    const BACKEND: Backend;

    fn from_int(n: i64) -> Self;

    /// Exact embedding of `num/den`; panics if `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Best-effort conversion to double precision.
    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float64;

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for Rat {
    const BACKEND: Backend = Backend::ExactRational;

    fn from_int(n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rat::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Shorthand for an exact rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an exact integer rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `|a - b| <= tol * max(1, |a|, |b|)`: the tolerance convention used by
/// every float comparison in this crate.
pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1.0_f64.max(a.abs()).max(b.abs())
}

/// Signed rational to f64 without going through `Display`.
pub fn rat_abs(x: &Rat) -> Rat {
    x.abs()
}
