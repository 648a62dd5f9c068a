//! Real root counting, isolation and refinement over exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::Interval;
use super::poly::{sign_of, UniPoly};
use crate::error::{Error, Result};

/// Signed remainder sequence `p, p', -rem(p, p'), ...`.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut seq = vec![p.clear_content()];
        let d = p.derivative();
        if !d.is_zero() {
            seq.push(d.clear_content());
            loop {
                let n = seq.len();
                let r = seq[n - 2].rem(&seq[n - 1]);
                if r.is_zero() {
                    break;
                }
                // positive rescaling keeps every sign intact
                seq.push(-r.clear_content());
            }
        }
        Ok(SturmChain { seq })
    }

    pub fn head(&self) -> &UniPoly {
        &self.seq[0]
    }

    /// Sign variations at `x`, zeros skipped.
    pub fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0;
        for p in &self.seq {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Distinct roots in `(a, b]`. Valid for any `a` when the head is
    /// square-free, otherwise `a` must not be a root.
    pub fn count_half_open(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a) - self.variations(b)
    }
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
pub fn sturm_root_count(p: &UniPoly, iv: &Interval) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    for e in [iv.lo(), iv.hi()] {
        if p.eval(e).is_zero() {
            return Err(Error::EndpointRoot(e.to_string()));
        }
    }
    if iv.lo() >= iv.hi() {
        return Ok(0);
    }
    let chain = SturmChain::new(p)?;
    Ok(chain.count_half_open(iv.lo(), iv.hi()))
}

/// A real root of some polynomial, isolated by an interval of its
/// square-free part.
#[derive(Clone, Debug)]
pub struct RealRoot {
    interval: Interval,
    multiplicity: usize,
    sqfree: UniPoly,
}

impl RealRoot {
    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    /// Square-free polynomial whose unique root in the interval this is.
    pub fn square_free(&self) -> &UniPoly {
        &self.sqfree
    }

    pub fn is_exact(&self) -> bool {
        self.interval.is_point()
    }

    /// Shrink the isolating interval to width at most `width`.
    pub fn refine_to(&mut self, width: &BigRational) {
        self.interval = bisect_sign_change(&self.sqfree, &self.interval, width);
    }

    pub fn refined(&self, width: &BigRational) -> RealRoot {
        let mut r = self.clone();
        r.refine_to(width);
        r
    }

    /// The root as an exact rational, if it is one.
    ///
    /// Complete by the rational root theorem: a rational root of a primitive
    /// integer polynomial has denominator dividing the leading coefficient,
    /// so once the interval is narrower than `1/(2 lc^2)` the simplest
    /// rational inside is the only candidate.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.interval.is_point() {
            return Some(self.interval.lo().clone());
        }
        let prim = self.sqfree.primitive();
        let lc = prim.leading().abs();
        let w = (lc.clone() * lc * BigRational::from_integer(BigInt::from(2))).recip();
        let r = self.refined(&w);
        if r.interval.is_point() {
            return Some(r.interval.lo().clone());
        }
        let cand = simplest_rational(r.interval.lo(), r.interval.hi());
        prim.eval(&cand).is_zero().then_some(cand)
    }

    /// Compare the root with a rational: `-1` below, `0` equal, `+1` above.
    pub fn cmp_rational(&self, x: &BigRational) -> i32 {
        if self.interval.is_point() {
            return sign_of(&(self.interval.lo() - x));
        }
        if x <= self.interval.lo() {
            return if x == self.interval.lo() && self.sqfree.eval(x).is_zero() { 0 } else { 1 };
        }
        if x >= self.interval.hi() {
            return if x == self.interval.hi() && self.sqfree.eval(x).is_zero() { 0 } else { -1 };
        }
        let sx = self.sqfree.sign_at(x);
        if sx == 0 {
            return 0;
        }
        let slo = self.sqfree.sign_at(self.interval.lo());
        // the root lies on the side where the sign differs from x's sign
        if sx == slo {
            1
        } else {
            -1
        }
    }
}

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

/// Bisection on a sign change of a square-free polynomial.
fn bisect_sign_change(sq: &UniPoly, iv: &Interval, width: &BigRational) -> Interval {
    if iv.is_point() {
        return iv.clone();
    }
    let mut lo = iv.lo().clone();
    let mut hi = iv.hi().clone();
    let slo = sq.sign_at(&lo);
    if slo == 0 {
        return Interval::point(lo);
    }
    if sq.sign_at(&hi) == 0 {
        return Interval::point(hi);
    }
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / two();
        match sq.sign_at(&mid) {
            0 => return Interval::point(mid),
            s if s == slo => lo = mid,
            _ => hi = mid,
        }
    }
    Interval::new(lo, hi)
}

/// Shrinks `delta` until `c ± delta` avoids roots of `sq` and the count
/// between the new endpoint and the anchor matches `expect`.
fn step_off_root(
    chain: &SturmChain,
    c: &BigRational,
    limit: &BigRational,
    left: bool,
    anchor: &BigRational,
    expect: usize,
) -> BigRational {
    let sq = chain.head();
    let mut delta = (limit - c).abs() / two();
    loop {
        let e = if left { c - &delta } else { c + &delta };
        if sq.sign_at(&e) != 0 {
            let n = if left {
                chain.count_half_open(anchor, &e)
            } else {
                chain.count_half_open(&e, anchor)
            };
            if n == expect {
                return e;
            }
        }
        delta /= two();
    }
}

/// Isolating intervals and multiplicities of all real roots, ascending.
///
/// Each returned interval is either a single exact rational or an open
/// interval with non-root rational endpoints containing exactly one root.
pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<RealRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let factors = p.square_free_decomposition();
    let sq = p.square_free_part();
    let chain = SturmChain::new(&sq)?;
    let bound = sq.root_bound();
    let mut out = Vec::new();
    let lo = -bound.clone();
    let total = chain.count_half_open(&lo, &bound);
    let mut stack = vec![(lo, bound, total)];
    let mut raw: Vec<Interval> = Vec::new();
    while let Some((lo, hi, n)) = stack.pop() {
        match n {
            0 => {}
            1 => raw.push(Interval::new(lo, hi)),
            _ => {
                let mid = (&lo + &hi) / two();
                if sq.sign_at(&mid) != 0 {
                    let left = chain.count_half_open(&lo, &mid);
                    stack.push((mid.clone(), hi, n - left));
                    stack.push((lo, mid, left));
                } else {
                    let left = chain.count_half_open(&lo, &mid) - 1;
                    let right = n - left - 1;
                    let l_end = step_off_root(&chain, &mid, &lo, true, &lo, left);
                    let r_start = step_off_root(&chain, &mid, &hi, false, &hi, right);
                    stack.push((r_start, hi, right));
                    raw.push(Interval::point(mid));
                    stack.push((lo, l_end, left));
                }
            }
        }
    }
    raw.sort_by(|a, b| a.lo().cmp(b.lo()));
    for iv in raw {
        let multiplicity = factors
            .iter()
            .position(|f| factor_has_root_in(f, &iv))
            .map(|i| i + 1)
            .expect("every root of the square-free part belongs to some factor");
        out.push(RealRoot {
            interval: iv,
            multiplicity,
            sqfree: sq.clone(),
        });
    }
    Ok(out)
}

fn factor_has_root_in(f: &UniPoly, iv: &Interval) -> bool {
    if f.degree().unwrap_or(0) == 0 {
        return false;
    }
    if iv.is_point() {
        return f.eval(iv.lo()).is_zero();
    }
    // endpoints are not roots of the square-free part, hence not of f
    SturmChain::new(f)
        .map(|c| c.count_half_open(iv.lo(), iv.hi()) == 1)
        .unwrap_or(false)
}

/// Isolating intervals with multiplicities, as plain pairs.
pub fn isolate_roots(p: &UniPoly) -> Result<Vec<(Interval, usize)>> {
    Ok(isolate_real_roots(p)?
        .into_iter()
        .map(|r| (r.interval, r.multiplicity))
        .collect())
}

/// Refine an isolating interval of `p` to width at most `width`.
pub fn refine_root(p: &UniPoly, iv: &Interval, width: &BigRational) -> Result<Interval> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sq = p.square_free_part();
    let n = if iv.is_point() {
        usize::from(sq.eval(iv.lo()).is_zero())
    } else {
        let chain = SturmChain::new(&sq)?;
        usize::from(sq.eval(iv.lo()).is_zero()) + chain.count_half_open(iv.lo(), iv.hi())
    };
    if n != 1 {
        return Err(Error::NotIsolating(n));
    }
    Ok(bisect_sign_change(&sq, iv, width))
}

/// Simplest rational (smallest denominator, then numerator) in `[lo, hi]`.
pub fn simplest_rational(lo: &BigRational, hi: &BigRational) -> BigRational {
    assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_rational(&-hi.clone(), &-lo.clone());
    }
    // 0 < lo <= hi, walk continued fractions
    let mut terms: Vec<BigInt> = Vec::new();
    let (mut a, mut b) = (lo.clone(), hi.clone());
    loop {
        let fl = a.floor();
        if fl == a {
            terms.push(fl.to_integer());
            break;
        }
        if &fl + BigRational::one() <= b {
            terms.push(fl.to_integer() + 1);
            break;
        }
        terms.push(fl.to_integer());
        let na = (&b - &fl).recip();
        let nb = (&a - &fl).recip();
        a = na;
        b = nb;
    }
    let mut acc = BigRational::from_integer(terms.pop().unwrap());
    while let Some(t) = terms.pop() {
        acc = BigRational::from_integer(t) + acc.recip();
    }
    acc
}
