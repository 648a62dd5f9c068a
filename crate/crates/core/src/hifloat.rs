//! Fixed-precision binary floating point (224 bits, about 67 decimal digits)
//! used for the flow linearization and equilibrium residuals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::{FieldScalar, Real, Scalar};

/// Working precision in bits.
pub const HI_PRECISION: usize = 224;

type Inner = FBig<HalfEven, 2>;

#[derive(Clone, PartialEq)]
pub struct HiFloat(Inner);

fn to_ibig(n: &BigInt) -> IBig {
    IBig::from_str_radix(&n.to_str_radix(16), 16).expect("hex round trip")
}

fn from_ibig(n: &IBig) -> BigInt {
    BigInt::parse_bytes(n.in_radix(16).to_string().as_bytes(), 16).expect("hex round trip")
}

impl HiFloat {
    fn wrap(x: Inner) -> Self {
        if x.precision() == HI_PRECISION {
            HiFloat(x)
        } else {
            HiFloat(x.with_precision(HI_PRECISION).value())
        }
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Self::wrap(Inner::from_parts(to_ibig(n), 0))
    }

    pub fn is_negative(&self) -> bool {
        self.0 < Inner::ZERO
    }

    /// Decimal rendering with `digits` digits after the point.
    pub fn to_fixed(&self, digits: usize) -> String {
        crate::exactnum::format_fixed(&self.to_rational(), digits)
    }
}

impl fmt::Debug for HiFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_fixed(40))
    }
}

impl fmt::Display for HiFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_fixed(f.precision().unwrap_or(30)))
    }
}

impl PartialOrd for HiFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl Add for HiFloat {
    type Output = HiFloat;
    fn add(self, rhs: HiFloat) -> HiFloat {
        HiFloat::wrap(self.0 + rhs.0)
    }
}

impl Sub for HiFloat {
    type Output = HiFloat;
    fn sub(self, rhs: HiFloat) -> HiFloat {
        HiFloat::wrap(self.0 - rhs.0)
    }
}

impl Mul for HiFloat {
    type Output = HiFloat;
    fn mul(self, rhs: HiFloat) -> HiFloat {
        HiFloat::wrap(self.0 * rhs.0)
    }
}

impl Div for HiFloat {
    type Output = HiFloat;
    fn div(self, rhs: HiFloat) -> HiFloat {
        HiFloat::wrap(self.0 / rhs.0)
    }
}

impl Neg for HiFloat {
    type Output = HiFloat;
    fn neg(self) -> HiFloat {
        HiFloat(-self.0)
    }
}

impl Zero for HiFloat {
    fn zero() -> Self {
        HiFloat::wrap(Inner::ZERO)
    }
    fn is_zero(&self) -> bool {
        self.0 == Inner::ZERO
    }
}

impl One for HiFloat {
    fn one() -> Self {
        HiFloat::wrap(Inner::ONE)
    }
}

impl Scalar for HiFloat {
    fn from_rational(q: &BigRational) -> Self {
        HiFloat::from_bigint(q.numer()) / HiFloat::from_bigint(q.denom())
    }
}

impl FieldScalar for HiFloat {}

impl Real for HiFloat {
    fn sqrt(&self) -> Self {
        HiFloat::wrap(self.0.sqrt())
    }
    fn ln(&self) -> Self {
        HiFloat::wrap(self.0.ln())
    }
    fn exp(&self) -> Self {
        HiFloat::wrap(self.0.exp())
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }
    fn from_f64(x: f64) -> Self {
        Self::from_rational(&BigRational::from_float(x).expect("finite f64"))
    }
    fn to_rational(&self) -> BigRational {
        let repr = self.0.repr();
        let m = from_ibig(repr.significand());
        let e = repr.exponent();
        if e >= 0 {
            BigRational::from_integer(m << (e as usize))
        } else {
            BigRational::new(m, BigInt::one() << ((-e) as usize))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn holds_more_than_fifty_digits() {
        let third = HiFloat::from_ratio(1, 3);
        let back = third.to_rational();
        let err = (back - BigRational::new(1.into(), 3.into())).abs();
        assert!(err < BigRational::new(1.into(), BigInt::from(10).pow(60)));
    }

    #[test]
    fn exp_ln_round_trip() {
        let x = HiFloat::from_ratio(7, 5);
        let y = x.ln().exp();
        let err = (y - x).abs().to_rational();
        assert!(err < BigRational::new(1.into(), BigInt::from(10).pow(55)));
    }

    #[test]
    fn negative_rationals_convert() {
        let x = HiFloat::from_ratio(-5, 8);
        assert_eq!(x.to_rational(), BigRational::new((-5).into(), 8.into()));
        assert!(x.is_negative());
    }
}
