//! The degree-12 polynomial `Q`, its zero surface and the region classifier.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{
    refine_root, sign_of, sturm_root_count, Interval, Number, QuadExt, UniPoly,
};
use crate::scalar::Scalar;
use crate::wallach::{AParams, Region};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Elementary symmetric functions of a triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTriple<T = BigRational> {
    pub s1: T,
    pub s2: T,
    pub s3: T,
}

pub fn sym_of<T: Scalar>(a: &[T; 3]) -> SymTriple<T> {
    let [a1, a2, a3] = a.clone();
    SymTriple {
        s1: a1.clone() + a2.clone() + a3.clone(),
        s2: a1.clone() * a2.clone() + a1.clone() * a3.clone() + a2.clone() * a3.clone(),
        s3: a1 * a2 * a3,
    }
}

pub fn symfun(a: &AParams) -> SymTriple {
    sym_of(a.as_array())
}

/// `Q` through the symmetric functions, over any commutative ring.
pub fn q_from_sym<T: Scalar>(s: &SymTriple<T>) -> T {
    let c = |n: i64| T::from_i64(n);
    let (s1, s2, s3) = (s.s1.clone(), s.s2.clone(), s.s3.clone());
    let p = |e: u32| s1.powu(e);
    let w = c(2) * s1.clone() + c(4) * s3.clone() - c(1);
    let long = c(64) * p(5) - c(64) * p(4) + c(8) * p(3) + c(12) * p(2) - c(6) * s1.clone()
        + c(1)
        + c(240) * s3.clone() * p(2)
        - c(240) * s3.clone() * s1.clone()
        - c(1536) * s3.square() * s1.clone()
        - c(4096) * s3.powu(3)
        + c(60) * s3.clone()
        + c(768) * s3.square();
    let u = c(2) * s1.clone() - c(32) * s3.clone() - c(1);
    let v = c(10) * s1.clone() + c(32) * s3.clone() - c(5);
    let quad = c(13) - c(52) * s1.clone() + c(640) * s3.clone() * s1.clone()
        + c(1024) * s3.square()
        - c(320) * s3.clone()
        + c(52) * p(2);
    let e = c(2) * s1.clone() - c(1);
    w.clone() * long - c(8) * s1.clone() * w * u.clone() * v * s2.clone()
        - c(16) * p(2) * quad * s2.square()
        + c(64) * e.clone() * u * s2.powu(3)
        + c(2048) * s1.clone() * e * s2.powu(4)
}

/// `Q(a1, a2, a3)` over any commutative ring.
pub fn q_of<T: Scalar>(a: &[T; 3]) -> T {
    q_from_sym(&sym_of(a))
}

pub fn eval_q(a: &AParams) -> BigRational {
    q_of(a.as_array())
}

/// Sparse polynomial in three variables, used once to expand `Q`.
#[derive(Clone, Debug, Default, PartialEq)]
struct TriPoly(BTreeMap<[u32; 3], BigRational>);

impl TriPoly {
    fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        TriPoly(BTreeMap::from([(e, BigRational::one())]))
    }

    fn add_term(&mut self, e: [u32; 3], c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }
}

impl Add for TriPoly {
    type Output = TriPoly;
    fn add(mut self, rhs: TriPoly) -> TriPoly {
        for (e, c) in rhs.0 {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: TriPoly) -> TriPoly {
        self + (-rhs)
    }
}

impl Neg for TriPoly {
    type Output = TriPoly;
    fn neg(self) -> TriPoly {
        TriPoly(self.0.into_iter().map(|(e, c)| (e, -c)).collect())
    }
}

impl Mul for TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: TriPoly) -> TriPoly {
        let mut out = TriPoly::default();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &rhs.0 {
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        out
    }
}

impl Zero for TriPoly {
    fn zero() -> Self {
        TriPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl One for TriPoly {
    fn one() -> Self {
        TriPoly(BTreeMap::from([([0; 3], BigRational::one())]))
    }
}

impl Scalar for TriPoly {
    fn from_rational(c: &BigRational) -> Self {
        let mut p = TriPoly::default();
        p.add_term([0; 3], c.clone());
        p
    }
}

/// Monomial table of `Q` in `a1, a2, a3`.
fn expanded_q() -> &'static [([u32; 3], BigRational)] {
    static TABLE: OnceLock<Vec<([u32; 3], BigRational)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let vars = [TriPoly::var(0), TriPoly::var(1), TriPoly::var(2)];
        q_of(&vars).0.into_iter().collect()
    })
}

/// Number of monomials in the expansion of `Q`.
pub fn expanded_q_terms() -> usize {
    expanded_q().len()
}

/// `Q(a)` evaluated from the monomial expansion.
pub fn eval_q_expanded(a: &AParams) -> BigRational {
    let a = a.as_array();
    expanded_q()
        .iter()
        .map(|(e, c)| c * a[0].powu(e[0]) * a[1].powu(e[1]) * a[2].powu(e[2]))
        .fold(BigRational::zero(), |s, t| s + t)
}

/// Exact gradient of `Q` at any rational point.
pub fn grad_q_at(a: &[BigRational; 3]) -> [BigRational; 3] {
    let mut g = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
    for (e, c) in expanded_q() {
        for (i, gi) in g.iter_mut().enumerate() {
            if e[i] == 0 {
                continue;
            }
            let mut t = c * BigRational::from_integer(BigInt::from(e[i]));
            for (j, x) in a.iter().enumerate() {
                let pow = if j == i { e[j] - 1 } else { e[j] };
                t *= x.powu(pow);
            }
            *gi += t;
        }
    }
    g
}

pub fn grad_q(a: &AParams) -> [BigRational; 3] {
    grad_q_at(a.as_array())
}

/// `Q` along `from + t (to - from)` as a polynomial in `t`.
pub fn q_on_segment(from: &[BigRational; 3], to: &[BigRational; 3]) -> UniPoly {
    let line = [0, 1, 2].map(|i| {
        UniPoly::new(vec![from[i].clone(), &to[i] - &from[i]])
    });
    q_of(&line)
}

/// Which rule decided a classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Sign,
    S1Shortcut,
    QuarterShortcut,
    SegmentTest,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Sign => "sign",
            Method::S1Shortcut => "s1-shortcut",
            Method::QuarterShortcut => "quarter-shortcut",
            Method::SegmentTest => "segment-test",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionLabel {
    pub region: Region,
    pub q_sign: i32,
    pub method: Method,
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (sign {}, {})", self.region, self.q_sign, self.method.name())
    }
}

pub fn reference_o1() -> [BigRational; 3] {
    [q(1, 6), q(1, 6), q(1, 6)]
}

pub fn reference_o2() -> [BigRational; 3] {
    [q(7, 15), q(7, 15), q(7, 15)]
}

pub fn reference_o3() -> [BigRational; 3] {
    [q(1, 6), q(1, 4), q(1, 3)]
}

/// Roots of `Q` strictly inside the segment from `a` to `target`.
fn segment_crossings(a: &[BigRational; 3], target: &[BigRational; 3]) -> Result<usize> {
    let p = q_on_segment(a, target);
    sturm_root_count(&p, &Interval::new(BigRational::zero(), BigRational::one()))
}

pub fn classify_region(a: &AParams) -> Result<RegionLabel> {
    if a.is_boundary() {
        return Err(Error::BoundaryInput);
    }
    let value = eval_q(a);
    let q_sign = sign_of(&value);
    let label = |region, method| RegionLabel { region, q_sign, method };
    match q_sign {
        0 => return Ok(label(Region::Omega, Method::Sign)),
        1 => return Ok(label(Region::O3, Method::Sign)),
        _ => {}
    }
    let s = symfun(a);
    if s.s1 <= q(1, 2) {
        return Ok(label(Region::O1, Method::S1Shortcut));
    }
    if a.as_array().iter().any(|x| *x < q(1, 4)) {
        return Ok(label(Region::O1, Method::QuarterShortcut));
    }
    let pts = a.as_array();
    let n1 = segment_crossings(pts, &reference_o1())?;
    if n1 == 0 {
        return Ok(label(Region::O1, Method::SegmentTest));
    }
    let n2 = segment_crossings(pts, &reference_o2())?;
    if n2 == 0 {
        return Ok(label(Region::O2, Method::SegmentTest));
    }
    Err(Error::SegmentInconclusive(format!(
        "{a:?}: {n1} crossings toward O1 reference, {n2} toward O2 reference"
    )))
}

/// `f(x) = 16x^3 - 16h x^2 + 2h - 1`.
pub fn f_poly(h: &BigRational) -> UniPoly {
    UniPoly::new(vec![
        q(2, 1) * h - q(1, 1),
        BigRational::zero(),
        -(q(16, 1) * h),
        q(16, 1),
    ])
}

/// `16x^2 - (24h - 4)x + 8h^2 - 4h + 1`, the factor carrying `x_hat`.
pub fn hat_quadratic<T: Scalar>(h: &T, x: &T) -> T {
    let c = |n: i64| T::from_i64(n);
    c(16) * x.square() - (c(24) * h.clone() - c(4)) * x.clone() + c(8) * h.square()
        - c(4) * h.clone()
        + c(1)
}

fn hat_quadratic_poly(h: &BigRational) -> UniPoly {
    UniPoly::new(vec![
        q(8, 1) * h * h - q(4, 1) * h + q(1, 1),
        q(4, 1) - q(24, 1) * h,
        q(16, 1),
    ])
}

const SQRT_BITS: u32 = 200;

/// Rational enclosure of `sqrt(x)` for a nonnegative enclosure `x`.
fn interval_sqrt(x: &Interval, bits: u32) -> Interval {
    let scale = BigInt::one() << (2 * bits as usize);
    let den = BigInt::one() << bits as usize;
    let lo_num = (x.lo().max(&BigRational::zero()) * BigRational::from_integer(scale.clone()))
        .floor()
        .to_integer()
        .sqrt();
    let hi_num = (x.hi() * BigRational::from_integer(scale)).ceil().to_integer().sqrt() + 1;
    Interval::new(BigRational::new(lo_num, den.clone()), BigRational::new(hi_num, den))
}

/// `(6h - 1 - sqrt(4h^2 + 4h - 3)) / 8` for `1/2 <= h <= 3/4`.
///
/// Exact whenever the square root lies in the field of `h`; otherwise a
/// certified enclosure.
pub fn x_hat(h: &QuadExt) -> Result<Number> {
    if *h < QuadExt::rational(q(1, 2)) || *h > QuadExt::rational(q(3, 4)) {
        return Err(Error::OutOfRange(format!("h = {h} not in [1/2, 3/4]")));
    }
    let c = |n: i64| QuadExt::from_i64(n);
    let disc = c(4) * h.square() + c(4) * h.clone() - c(3);
    let root = match disc.as_rational() {
        Some(r) => Some(QuadExt::sqrt_of(r)),
        None => disc.sqrt(),
    };
    let compatible = |r: &QuadExt| r.is_rational() || h.is_rational() || r.radicand() == h.radicand();
    if let Some(r) = root.filter(compatible) {
        let x = (c(6) * h.clone() - c(1) - r) / c(8);
        return Ok(Number::from(x));
    }
    let hi = h.enclosure(SQRT_BITS);
    let di = disc.enclosure(SQRT_BITS);
    let s = interval_sqrt(&di, SQRT_BITS);
    let i = |v: i64| Interval::point(BigRational::from_integer(v.into()));
    let x = (i(6) * hi - i(1) - s) * Interval::point(q(1, 8));
    Ok(Number::Enclosure(x))
}

/// Enclosure of the root of `f` in `(0, h/3]`, refined to `width`.
pub fn x_tilde(h: &BigRational, width: &BigRational) -> Result<Interval> {
    if *h <= q(1, 2) || *h > q(3, 4) {
        return Err(Error::OutOfRange(format!("h = {h} not in (1/2, 3/4]")));
    }
    let f = f_poly(h);
    let top = h / q(3, 1);
    if f.eval(&top).is_zero() {
        return Ok(Interval::point(top));
    }
    let iv = Interval::new(BigRational::zero(), top);
    let n = sturm_root_count(&f, &iv)?;
    if n != 1 {
        return Err(Error::NotIsolating(n));
    }
    refine_root(&f, &iv, width)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleVerdict {
    InsideItO1,
    OutsideStO3,
    Indeterminate,
}

/// Certified inner/outer triangle membership in the plane `s1 = h`.
pub fn triangle_test(a: &AParams) -> Result<TriangleVerdict> {
    let h = symfun(a).s1;
    if h <= q(1, 2) || h >= q(3, 4) {
        return Err(Error::OutOfRange(format!("s1 = {h} not in (1/2, 3/4)")));
    }
    let g = hat_quadratic_poly(&h);
    let two = q(2, 1);
    let inside = a
        .as_array()
        .iter()
        .all(|ai| g.sign_at(&((&h - ai) / &two)) > 0);
    if inside {
        return Ok(TriangleVerdict::InsideItO1);
    }
    let f = f_poly(&h);
    let bound = &two * &h / q(3, 1);
    let outside = a
        .as_array()
        .iter()
        .any(|ai| *ai <= bound && f.sign_at(ai) > 0);
    if outside {
        return Ok(TriangleVerdict::OutsideStO3);
    }
    Ok(TriangleVerdict::Indeterminate)
}

/// Point `(a1, t, t)` on the singular edge of the surface.
pub fn edge_point(t: &BigRational) -> Result<AParams> {
    let den = q(8, 1) * t * t - q(1, 1);
    if den.is_zero() {
        return Err(Error::OutOfRange(format!("t = {t} is a pole")));
    }
    let num = q(16, 1) * t * t * t - q(4, 1) * t + q(1, 1);
    let a1 = -(num / den) / q(2, 1);
    let inside = |x: &BigRational| x.is_positive() && *x < q(1, 2);
    if !inside(&a1) || !inside(t) {
        return Err(Error::OutOfRange(format!("edge point ({a1}, {t}, {t}) leaves the cube")));
    }
    AParams::new(a1, t.clone(), t.clone())
}
