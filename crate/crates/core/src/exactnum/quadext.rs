use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::Interval;
use super::poly::sign_of;
use crate::scalar::{FieldScalar, Scalar};

/// Exact element `p + q·√d` of a real quadratic field.
///
/// `d` is a positive integer that is not a perfect square, with small square
/// factors pulled out. A value with `q = 0` is a plain rational and carries
/// `d = 1`; it combines with any radicand. Combining two values with
/// different nontrivial radicands panics.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadExt {
    p: BigRational,
    q: BigRational,
    d: BigInt,
}

const TRIAL_LIMIT: u64 = 10_000;

/// Writes `n = s^2 * r` pulling out squares of primes up to a trial bound,
/// and returns `(s, r)`; `r == 1` only when `n` is a perfect square.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive());
    let root = n.sqrt();
    if &root * &root == *n {
        return (root, BigInt::one());
    }
    let mut s = BigInt::one();
    let mut r = n.clone();
    let mut f = 2u64;
    while f <= TRIAL_LIMIT {
        let ff = BigInt::from(f * f);
        if ff > r {
            break;
        }
        while (&r % &ff).is_zero() {
            r /= &ff;
            s *= f;
        }
        f += 1;
    }
    let root = r.sqrt();
    if &root * &root == r {
        s *= root;
        r = BigInt::one();
    }
    (s, r)
}

impl QuadExt {
    pub fn rational(p: BigRational) -> Self {
        QuadExt {
            p,
            q: BigRational::zero(),
            d: BigInt::one(),
        }
    }

    /// `p + q·√radicand` for any positive rational radicand.
    pub fn new(p: BigRational, q: BigRational, radicand: &BigRational) -> Self {
        assert!(radicand.is_positive(), "radicand must be positive");
        // sqrt(n/m) = sqrt(n*m)/m
        let nm = radicand.numer() * radicand.denom();
        let (s, r) = split_square(&nm);
        let coef = q * BigRational::new(s, radicand.denom().clone());
        if r.is_one() || coef.is_zero() {
            return QuadExt::rational(p + coef);
        }
        QuadExt { p, q: coef, d: r }
    }

    /// `√r` for a nonnegative rational `r`.
    pub fn sqrt_of(r: &BigRational) -> Self {
        if r.is_zero() {
            return QuadExt::rational(BigRational::zero());
        }
        QuadExt::new(BigRational::zero(), BigRational::one(), r)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.p
    }

    pub fn surd_coefficient(&self) -> &BigRational {
        &self.q
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.p)
    }

    fn common_radicand(&self, other: &QuadExt) -> BigInt {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => other.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert_eq!(self.d, other.d, "mixed radicands are not supported");
                self.d.clone()
            }
        }
    }

    fn make(p: BigRational, q: BigRational, d: BigInt) -> Self {
        if q.is_zero() {
            QuadExt::rational(p)
        } else {
            QuadExt { p, q, d }
        }
    }

    pub fn conjugate(&self) -> Self {
        QuadExt::make(self.p.clone(), -self.q.clone(), self.d.clone())
    }

    /// Field norm `p^2 - q^2 d`.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p - &self.q * &self.q * BigRational::from_integer(self.d.clone())
    }

    pub fn signum(&self) -> i32 {
        let sp = sign_of(&self.p);
        let sq = sign_of(&self.q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        // opposite signs: compare p^2 with q^2 d
        match sign_of(&self.norm()) {
            1 => sp,
            -1 => sq,
            _ => unreachable!("sqrt(d) is irrational"),
        }
    }

    /// Square root inside the same field, if one exists.
    pub fn sqrt(&self) -> Option<QuadExt> {
        match self.signum() {
            -1 => return None,
            0 => return Some(QuadExt::rational(BigRational::zero())),
            _ => {}
        }
        if self.is_rational() {
            return Some(QuadExt::sqrt_of(&self.p));
        }
        // (u + v√d)^2 = p + q√d  =>  u^2 = (p ± sqrt(norm)) / 2
        let norm = self.norm();
        if norm.is_negative() {
            return None;
        }
        let rn = rational_sqrt(&norm)?;
        let two = BigRational::from_integer(2.into());
        for cand in [(&self.p + &rn) / &two, (&self.p - &rn) / &two] {
            if cand.is_positive() {
                if let Some(u) = rational_sqrt(&cand) {
                    let v = &self.q / (&two * &u);
                    let root = QuadExt::make(u, v, self.d.clone());
                    let root = if root.signum() < 0 { -root } else { root };
                    if root.clone() * root.clone() == *self {
                        return Some(root);
                    }
                }
            }
        }
        None
    }

    /// Rational enclosure of width at most `2^-bits` (times `|q|`).
    pub fn enclosure(&self, bits: u32) -> Interval {
        if self.is_rational() {
            return Interval::point(self.p.clone());
        }
        let scale = BigInt::one() << (2 * bits as usize);
        let s = (&self.d * &scale).sqrt();
        let den = BigInt::one() << bits as usize;
        let root = Interval::new(
            BigRational::new(s.clone(), den.clone()),
            BigRational::new(s + 1, den),
        );
        Interval::point(self.p.clone()) + Interval::point(self.q.clone()) * root
    }

    pub fn to_f64(&self) -> f64 {
        crate::scalar::rational_to_f64(&self.enclosure(80).midpoint())
    }
}

/// Exact rational square root when `r` is a square of a rational.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(match (self.clone() - other.clone()).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.p);
        }
        let (sign, mag) = match self.q.numer().sign() {
            Sign::Minus => ("-", -self.q.clone()),
            _ => ("+", self.q.clone()),
        };
        if self.p.is_zero() {
            let sign = if sign == "-" { "-" } else { "" };
            write!(f, "{sign}{mag}*sqrt({})", self.d)
        } else {
            write!(f, "{} {sign} {mag}*sqrt({})", self.p, self.d)
        }
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        let d = self.common_radicand(&rhs);
        QuadExt::make(self.p + rhs.p, self.q + rhs.q, d)
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        let d = self.common_radicand(&rhs);
        QuadExt::make(self.p - rhs.p, self.q - rhs.q, d)
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        let d = self.common_radicand(&rhs);
        let dr = BigRational::from_integer(d.clone());
        let p = &self.p * &rhs.p + &self.q * &rhs.q * dr;
        let q = &self.p * &rhs.q + &self.q * &rhs.p;
        QuadExt::make(p, q, d)
    }
}

impl Div for QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: QuadExt) -> QuadExt {
        let n = rhs.norm();
        assert!(!n.is_zero(), "division by zero in quadratic field");
        let num = self * rhs.conjugate();
        QuadExt::make(num.p / &n, num.q / &n, num.d)
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::make(-self.p, -self.q, self.d)
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::rational(BigRational::one())
    }
}

impl Scalar for QuadExt {
    fn from_rational(q: &BigRational) -> Self {
        QuadExt::rational(q.clone())
    }
}

impl FieldScalar for QuadExt {}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn radicand_is_normalized() {
        let x = QuadExt::sqrt_of(&q(1, 2));
        assert_eq!(x.radicand(), &BigInt::from(2));
        assert_eq!(x.surd_coefficient(), &q(1, 2));
        let y = QuadExt::sqrt_of(&q(8, 1));
        assert_eq!(y.radicand(), &BigInt::from(2));
        assert_eq!(y.surd_coefficient(), &q(2, 1));
        assert!(QuadExt::sqrt_of(&q(9, 4)).is_rational());
    }

    #[test]
    fn field_operations_are_exact() {
        let s2 = QuadExt::sqrt_of(&q(2, 1));
        assert_eq!(s2.clone() * s2.clone(), QuadExt::from_i64(2));
        let a = QuadExt::from_i64(3) + s2.clone();
        let b = a.clone() / a.clone();
        assert!(b.is_one());
        let inv = QuadExt::one() / (s2.clone() - QuadExt::one());
        assert_eq!(inv, s2 + QuadExt::one());
    }

    #[test]
    fn sign_of_mixed_terms() {
        let s2 = QuadExt::sqrt_of(&q(2, 1));
        // 1.5 - sqrt(2) > 0, 1.4 - sqrt(2) < 0
        assert_eq!((QuadExt::from_ratio(3, 2) - s2.clone()).signum(), 1);
        assert_eq!((QuadExt::from_ratio(7, 5) - s2).signum(), -1);
    }

    #[test]
    fn square_root_within_field() {
        // (1 + sqrt 2)^2 = 3 + 2 sqrt 2
        let s2 = QuadExt::sqrt_of(&q(2, 1));
        let v = QuadExt::from_i64(3) + QuadExt::from_i64(2) * s2.clone();
        assert_eq!(v.sqrt().unwrap(), QuadExt::one() + s2);
        let s3 = QuadExt::sqrt_of(&q(3, 1));
        assert!(s3.sqrt().is_none());
    }

    #[test]
    fn enclosure_contains_value() {
        let s2 = QuadExt::sqrt_of(&q(2, 1));
        let e = s2.enclosure(64);
        assert!(e.lo() < &q(141422, 100000) && e.hi() > &q(141421, 100000));
        assert!(e.width() <= q(1, 1 << 62));
    }
}
