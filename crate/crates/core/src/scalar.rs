//! Scalar traits shared by the exact, interval and floating-point kernels.
//!
//! Polynomial expressions such as `Q`, the Einstein system and the Ricci
//! components are written once against these traits and instantiated with
//! rationals, quadratic surds, polynomials, intervals, `f64` or [`HiFloat`].
//!
//! [`HiFloat`]: crate::hifloat::HiFloat

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// A commutative ring that contains the rationals.
pub trait Scalar:
    Clone
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(q: &BigRational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn powu(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }
}

/// A [`Scalar`] with exact or rounded division.
pub trait FieldScalar: Scalar + Div<Output = Self> {
    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }
}

/// Ordered field with the transcendental operations the flow kernel needs.
pub trait Real: FieldScalar + PartialOrd {
    fn sqrt(&self) -> Self;
    fn ln(&self) -> Self;
    fn exp(&self) -> Self;
    fn to_f64(&self) -> f64;
    fn from_f64(x: f64) -> Self;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a < b {
            b
        } else {
            a
        }
    }

    /// Exact binary value as a rational (every finite float is dyadic).
    fn to_rational(&self) -> BigRational;
}

impl Scalar for BigRational {
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
}

impl FieldScalar for BigRational {}

impl Scalar for f64 {
    fn from_rational(q: &BigRational) -> Self {
        rational_to_f64(q)
    }
}

impl FieldScalar for f64 {}

impl Real for f64 {
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn to_rational(&self) -> BigRational {
        BigRational::from_float(*self).expect("finite f64")
    }
}

/// Nearest-ish `f64` of a big rational, robust to numerators and denominators
/// that individually overflow `f64`.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift = nb - db - 60;
    let scaled = if shift >= 0 {
        q.numer() / (q.denom() << (shift as usize))
    } else {
        (q.numer() << ((-shift) as usize)) / q.denom()
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}
