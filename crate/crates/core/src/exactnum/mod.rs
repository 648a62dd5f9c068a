//! Exact rationals, univariate and bivariate polynomials, Sturm chains,
//! certified intervals and a single-radicand quadratic field.

mod bipoly;
mod interval;
mod poly;
mod quadext;
mod roots;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub use bipoly::{resultant_eliminate, BiPoly, Var};
pub use interval::Interval;
pub use poly::UniPoly;
pub(crate) use poly::sign_of;
pub use quadext::{rational_sqrt, QuadExt};
pub use roots::{
    isolate_real_roots, isolate_roots, refine_root, simplest_rational, sturm_root_count, RealRoot,
    SturmChain,
};

use crate::hifloat::HiFloat;
use crate::scalar::rational_to_f64;

/// Fixed-point decimal with `digits` fractional digits, rounded half away
/// from zero.
pub fn format_fixed(q: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = q.abs() * BigRational::from_integer(scale.clone());
    let n = (scaled + BigRational::new(1.into(), 2.into())).floor().to_integer();
    let (int, frac) = n.div_rem(&scale);
    let sign = if q.is_negative() && !n.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
}

/// Parse `"p/q"` or an integer into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    (!d.is_zero()).then(|| BigRational::new(n, d))
}

/// A real value that is either exact or known through a certified enclosure.
#[derive(Clone, PartialEq)]
pub enum Number {
    Rational(BigRational),
    Quad(QuadExt),
    Enclosure(Interval),
}

impl Number {
    pub fn to_interval(&self, bits: u32) -> Interval {
        match self {
            Number::Rational(q) => Interval::point(q.clone()),
            Number::Quad(q) => q.enclosure(bits),
            Number::Enclosure(iv) => iv.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Number::Rational(q) => Some(q),
            Number::Quad(q) => q.as_rational(),
            Number::Enclosure(iv) if iv.is_point() => Some(iv.lo()),
            Number::Enclosure(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Number::Enclosure(iv) if !iv.is_point())
    }

    /// Certified sign, `None` when an enclosure straddles zero.
    pub fn signum(&self) -> Option<i32> {
        match self {
            Number::Rational(q) => Some(sign_of(q)),
            Number::Quad(q) => Some(q.signum()),
            Number::Enclosure(iv) => iv.certain_sign(),
        }
    }

    /// Best rational approximation (the exact value, or an enclosure midpoint).
    pub fn approx(&self) -> BigRational {
        match self {
            Number::Rational(q) => q.clone(),
            Number::Quad(q) => q.enclosure(256).midpoint(),
            Number::Enclosure(iv) => iv.midpoint(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.approx())
    }

    pub fn to_hifloat(&self) -> HiFloat {
        <HiFloat as crate::scalar::Scalar>::from_rational(&self.approx())
    }

    pub fn to_fixed(&self, digits: usize) -> String {
        format_fixed(&self.approx(), digits)
    }
}

impl From<BigRational> for Number {
    fn from(q: BigRational) -> Self {
        Number::Rational(q)
    }
}

impl From<QuadExt> for Number {
    fn from(q: QuadExt) -> Self {
        match q.as_rational() {
            Some(r) => Number::Rational(r.clone()),
            None => Number::Quad(q),
        }
    }
}

impl From<Interval> for Number {
    fn from(iv: Interval) -> Self {
        if iv.is_point() {
            Number::Rational(iv.lo().clone())
        } else {
            Number::Enclosure(iv)
        }
    }
}

impl fmt::Debug for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Rational(q) => write!(f, "{q}"),
            Number::Quad(q) => write!(f, "{q}"),
            Number::Enclosure(iv) => write!(f, "{iv:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn fixed_point_rounds_half_away() {
        assert_eq!(format_fixed(&q(1, 3), 6), "0.333333");
        assert_eq!(format_fixed(&q(2, 3), 6), "0.666667");
        assert_eq!(format_fixed(&q(-1, 8), 2), "-0.13");
        assert_eq!(format_fixed(&q(-1, 1000), 2), "0.00");
        assert_eq!(format_fixed(&q(7, 1), 3), "7.000");
    }

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/6"), Some(q(1, 2)));
        assert_eq!(parse_rational("-4"), Some(q(-4, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("0.5"), None);
    }
}
