//! Invariant Einstein metrics: the quadratic system in `(x1, x2, x3)`, its
//! certified solution by elimination, and the closed-form families.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{
    isolate_real_roots, rational_sqrt, resultant_eliminate, sturm_root_count, BiPoly, Interval,
    Number, QuadExt, RealRoot, UniPoly, Var,
};
use crate::scalar::Scalar;
use crate::wallach::{homothetic, homothety_classes, AParams, MetricTriple};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Default certification width, `10^-30`.
pub fn default_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u32).pow(30))
}

/// The two polynomial equations whose positive zeros are the Einstein
/// metrics, evaluated over any ring containing the rationals.
pub fn einstein_equations<T: Scalar>(a: &[BigRational; 3], x: &[T; 3]) -> [T; 2] {
    let c = |v: &BigRational| T::from_rational(v);
    let [a1, a2, a3] = a;
    let [x1, x2, x3] = x.clone();
    let e1 = c(&(a2 + a3))
        * (c(a1) * x2.square() + c(a1) * x3.square() - x2.clone() * x3.clone())
        + (c(a2) * x2.clone() + c(a3) * x3.clone()) * x1.clone()
        - c(&(a1 * a2 + a1 * a3 + q(2, 1) * a2 * a3)) * x1.square();
    let e2 = c(&(a1 + a3))
        * (c(a2) * x1.square() + c(a2) * x3.square() - x1.clone() * x3.clone())
        + (c(a1) * x1 + c(a3) * x3) * x2.clone()
        - c(&(a1 * a2 + q(2, 1) * a1 * a3 + a2 * a3)) * x2.square();
    [e1, e2]
}

const RESIDUAL_BITS: u32 = 256;

/// Values of both equations at `x`: exact when `x` lives in one quadratic
/// field, otherwise interval enclosures.
pub fn residual(a: &AParams, x: &MetricTriple) -> (Number, Number) {
    if let Some(xq) = x.as_quads() {
        let [e1, e2] = einstein_equations(a.as_array(), &xq);
        return (Number::from(e1), Number::from(e2));
    }
    let xi = x.enclosures(RESIDUAL_BITS);
    let [e1, e2] = einstein_equations(a.as_array(), &xi);
    (Number::from(e1), Number::from(e2))
}

/// Evidence that a reported metric solves the system.
#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Certificate {
    ExactZero,
    Enclosure { e1: Interval, e2: Interval },
}

#[derive(Clone, Debug)]
pub struct EinsteinSolution {
    /// Normalized so that `x3 = 1`.
    pub metric: MetricTriple,
    pub enclosure: [Interval; 3],
    pub multiplicity: usize,
    pub certificate: Certificate,
    /// Index of the solution obtained by swapping two coordinates with
    /// equal `a_i`, when that is a different homothety class.
    pub isometric_to: Option<usize>,
}

/// Shear parameters tried in order; `0` eliminates `x2` directly.
fn shears() -> Vec<BigRational> {
    let mut out = vec![BigRational::zero()];
    for n in 1..=6i64 {
        out.push(q(n, 1));
        out.push(q(-n, 1));
        out.push(q(1, n + 1));
        out.push(q(-1, n + 1));
    }
    out
}

enum Value {
    Exact(QuadExt),
    Approx(Interval),
}

struct Candidate {
    x1: Value,
    x2: Value,
    multiplicity: usize,
}

/// Exact real roots of a square-free quadratic, ascending.
fn quadratic_roots(p: &UniPoly) -> Option<[QuadExt; 2]> {
    let (c0, c1, c2) = (p.coeff(0), p.coeff(1), p.coeff(2));
    let disc = &c1 * &c1 - q(4, 1) * &c2 * &c0;
    if disc <= BigRational::zero() {
        return None;
    }
    let two_a = q(2, 1) * &c2;
    let base = QuadExt::rational(-&c1 / &two_a);
    let s = match rational_sqrt(&disc) {
        Some(r) => QuadExt::rational(r),
        None => QuadExt::sqrt_of(&disc),
    } / QuadExt::rational(two_a);
    let (lo, hi) = (base.clone() - s.clone(), base + s);
    Some(if lo <= hi { [lo, hi] } else { [hi, lo] })
}

fn in_closed(iv: &Interval, x: &QuadExt) -> bool {
    *x >= QuadExt::rational(iv.lo().clone()) && *x <= QuadExt::rational(iv.hi().clone())
}

fn shift(w: &BigRational, bits: usize) -> BigRational {
    w / BigRational::from_integer(BigInt::one() << bits)
}

const MAX_REFINE_ROUNDS: usize = 24;

/// Enclose `(x1, x2)` for an irrational root `u` of the eliminant.
fn enclose_root(
    root: &RealRoot,
    l0: &UniPoly,
    l1: &UniPoly,
    c: &BigRational,
    width: &BigRational,
) -> Result<Option<(Interval, Interval)>> {
    let mut w = shift(width, 4);
    for _ in 0..MAX_REFINE_ROUNDS {
        let u = root.refined(&w).interval().clone();
        let d = l1.eval_in(&u);
        let Some(inv) = d.recip() else {
            w = shift(&w, 32);
            continue;
        };
        let y = -(l0.eval_in(&u) * inv);
        let x1 = u - Interval::point(c.clone()) * y.clone();
        if y.width() > *width || x1.width() > *width {
            w = shift(&w, 16);
            continue;
        }
        match (x1.certain_sign(), y.certain_sign()) {
            (Some(1), Some(1)) => return Ok(Some((x1, y))),
            (Some(s1), Some(s2)) if s1 <= 0 || s2 <= 0 => return Ok(None),
            (Some(s), None) | (None, Some(s)) if s <= 0 => return Ok(None),
            _ => w = shift(&w, 32),
        }
    }
    Err(Error::CertificationFailure(format!(
        "root near {:?} could not be separated from a sign boundary",
        root.interval()
    )))
}

/// One elimination pass with `x1 = u - c x2`, `x3 = 1`. `Ok(None)` means
/// the shear is unsuitable and another should be tried.
fn solve_with_shear(
    a: &[BigRational; 3],
    c: &BigRational,
    width: &BigRational,
) -> Result<Option<Vec<Candidate>>> {
    let u = BiPoly::var(Var::X);
    let y = BiPoly::var(Var::Y);
    let x1 = u - BiPoly::constant(c.clone()) * y.clone();
    let [p1, p2] = einstein_equations(a, &[x1, y, BiPoly::one()]);
    if p1.is_zero() || p2.is_zero() {
        return Err(Error::DegenerateSystem("an equation vanishes identically".into()));
    }
    let ca = p1.coeffs_in(Var::Y);
    let cb = p2.coeffs_in(Var::Y);
    let const_lead = |cs: &[UniPoly]| cs.len() == 3 && cs[2].degree() == Some(0);
    if !const_lead(&ca) || !const_lead(&cb) {
        return Ok(None);
    }
    let r = resultant_eliminate(&p1, &p2, Var::Y)?;
    if r.is_zero() {
        return Err(Error::DegenerateSystem("the equations share a common factor".into()));
    }
    if r.degree() == Some(0) {
        return Ok(Some(Vec::new()));
    }
    // b2 A - a2 B = L1 y + L0
    let l1 = &(&cb[2] * &ca[1]) - &(&ca[2] * &cb[1]);
    let l0 = &(&cb[2] * &ca[0]) - &(&ca[2] * &cb[0]);
    let roots = isolate_real_roots(&r)?;
    let sq = r.square_free_part();
    let bad = sq.gcd(&l1);

    let rationals: Vec<Option<BigRational>> = roots.iter().map(|r| r.as_rational()).collect();
    let mut rest = sq.clone();
    for v in rationals.iter().flatten() {
        rest = rest.div_exact(&UniPoly::linear_root(v));
    }
    let quads = if rest.degree() == Some(2) { quadratic_roots(&rest) } else { None };

    let mut out = Vec::new();
    for (root, rat) in roots.iter().zip(&rationals) {
        let exact = match rat {
            Some(v) => Some(QuadExt::rational(v.clone())),
            None => quads
                .as_ref()
                .and_then(|qs| qs.iter().find(|x| in_closed(root.interval(), x)).cloned()),
        };
        let cand = match exact {
            Some(uq) => {
                let d: QuadExt = l1.eval_in(&uq);
                let yq = if d.is_zero() {
                    // the two fibre quadratics are proportional; accept only a
                    // double root, which is then the sole point over u
                    let cf = |i: usize| -> QuadExt { ca[i].eval_in(&uq) };
                    let (f0, f1, f2) = (cf(0), cf(1), cf(2));
                    let disc = f1.clone() * f1.clone() - QuadExt::from_i64(4) * f2.clone() * f0;
                    if !disc.is_zero() {
                        return Ok(None);
                    }
                    -(f1 / (QuadExt::from_i64(2) * f2))
                } else {
                    -(l0.eval_in(&uq) / d)
                };
                let x1q = uq - QuadExt::rational(c.clone()) * yq.clone();
                if x1q.signum() <= 0 || yq.signum() <= 0 {
                    continue;
                }
                Candidate {
                    x1: Value::Exact(x1q),
                    x2: Value::Exact(yq),
                    multiplicity: root.multiplicity(),
                }
            }
            None => {
                if bad.degree().unwrap_or(0) > 0
                    && sturm_root_count(&bad, root.interval()).map_or(true, |n| n > 0)
                {
                    return Ok(None);
                }
                match enclose_root(root, &l0, &l1, c, width)? {
                    Some((x1i, yi)) => Candidate {
                        x1: Value::Approx(x1i),
                        x2: Value::Approx(yi),
                        multiplicity: root.multiplicity(),
                    },
                    None => continue,
                }
            }
        };
        out.push(cand);
    }
    Ok(Some(out))
}

fn certify(a: &AParams, cand: Candidate) -> Result<EinsteinSolution> {
    let one = Number::Rational(BigRational::one());
    match (cand.x1, cand.x2) {
        (Value::Exact(x1), Value::Exact(x2)) => {
            let [e1, e2] = einstein_equations(
                a.as_array(),
                &[x1.clone(), x2.clone(), QuadExt::from_i64(1)],
            );
            if !e1.is_zero() || !e2.is_zero() {
                return Err(Error::CertificationFailure(format!(
                    "exact back-substitution left residual ({e1}, {e2})"
                )));
            }
            let metric = MetricTriple::new(x1.into(), x2.into(), one)?;
            let enclosure = metric.enclosures(RESIDUAL_BITS);
            Ok(EinsteinSolution {
                metric,
                enclosure,
                multiplicity: cand.multiplicity,
                certificate: Certificate::ExactZero,
                isometric_to: None,
            })
        }
        (x1, x2) => {
            let iv = |v: Value| match v {
                Value::Exact(e) => e.enclosure(RESIDUAL_BITS),
                Value::Approx(i) => i,
            };
            let (x1, x2) = (iv(x1), iv(x2));
            let [e1, e2] = einstein_equations(
                a.as_array(),
                &[x1.clone(), x2.clone(), Interval::point(BigRational::one())],
            );
            if !e1.contains_zero() || !e2.contains_zero() {
                return Err(Error::CertificationFailure(format!(
                    "residual enclosure excludes zero: {e1:?}, {e2:?}"
                )));
            }
            let metric = MetricTriple::new(x1.clone().into(), x2.clone().into(), one)?;
            Ok(EinsteinSolution {
                metric,
                enclosure: [x1, x2, Interval::point(BigRational::one())],
                multiplicity: cand.multiplicity,
                certificate: Certificate::Enclosure { e1, e2 },
                isometric_to: None,
            })
        }
    }
}

fn flag_isometric(a: &AParams, sols: &mut [EinsteinSolution], tol: &BigRational) -> Result<()> {
    let av = a.as_array();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if av[i] != av[j] {
            continue;
        }
        let mut perm = [0, 1, 2];
        perm.swap(i, j);
        for s in 0..sols.len() {
            if sols[s].isometric_to.is_some() {
                continue;
            }
            let swapped = sols[s].metric.permuted(perm);
            for t in 0..sols.len() {
                if t != s && homothetic(&swapped, &sols[t].metric, tol)? {
                    sols[s].isometric_to = Some(t);
                    break;
                }
            }
        }
    }
    Ok(())
}

/// All positive Einstein metrics up to homothety, each normalized to
/// `x3 = 1` and certified to `width`.
pub fn solve(a: &AParams, width: &BigRational) -> Result<Vec<EinsteinSolution>> {
    if !width.is_positive_rational() {
        return Err(Error::BadParam(format!("width {width} must be positive")));
    }
    for c in shears() {
        let Some(cands) = solve_with_shear(a.as_array(), &c, width)? else {
            continue;
        };
        let mut sols = cands
            .into_iter()
            .map(|cand| certify(a, cand))
            .collect::<Result<Vec<_>>>()?;
        sols.sort_by(|p, q| {
            let key = |s: &EinsteinSolution| (s.enclosure[0].midpoint(), s.enclosure[1].midpoint());
            key(p).cmp(&key(q))
        });
        let metrics: Vec<_> = sols.iter().map(|s| s.metric.clone()).collect();
        let classes = homothety_classes(&metrics, width)?;
        if classes.len() != sols.len() {
            return Err(Error::CertificationFailure(
                "two reported solutions are homothetic".into(),
            ));
        }
        flag_isometric(a, &mut sols, width)?;
        return Ok(sols);
    }
    Err(Error::CertificationFailure("no admissible elimination shear".into()))
}

trait PositiveRational {
    fn is_positive_rational(&self) -> bool;
}

impl PositiveRational for BigRational {
    fn is_positive_rational(&self) -> bool {
        *self > BigRational::zero()
    }
}

/// Number of homothety classes, with the solutions that witness it.
#[derive(Clone, Debug)]
pub struct Count {
    pub classes: usize,
    pub solutions: Vec<EinsteinSolution>,
}

pub fn count(a: &AParams) -> Result<Count> {
    let solutions = solve(a, &default_width())?;
    Ok(Count {
        classes: solutions.len(),
        solutions,
    })
}

/// The point `a` of `SO(2(t^2+t+1)) / SO(t^2+1) x SO(t^2+1) x SO(2t)`.
pub fn t_family_params(t: u64) -> Result<AParams> {
    if t < 1 {
        return Err(Error::BadParam(format!("t = {t}")));
    }
    let t = t as i64;
    let a12 = q(t * t + 1, 4 * t * (t + 1));
    AParams::new(a12.clone(), a12, q(1, 2 * (t + 1)))
}

/// The three explicit metrics of the `t` family, exactly.
pub fn closed_forms_t_family(t: u64) -> Result<Vec<MetricTriple>> {
    if t < 2 {
        return Err(Error::BadParam(format!("t = {t}, expected t >= 2")));
    }
    let ti = t as i64;
    let r = |n: i64| QuadExt::from_i64(n);
    let root = QuadExt::sqrt_of(&q(ti, ti + 2));
    let base = r(2 * ti * ti);
    let surd = r(ti * ti - 1) * root;
    let x3 = QuadExt::rational(q(2 * ti * (ti * ti + 1), ti + 1));
    Ok(vec![
        MetricTriple::from_ints([ti + 1, ti + 1, 2 * ti])?,
        MetricTriple::from_quads([base.clone() + surd.clone(), base.clone() - surd.clone(), x3.clone()])?,
        MetricTriple::from_quads([base.clone() - surd.clone(), base + surd, x3])?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(r: [(i64, i64); 3]) -> AParams {
        AParams::from_ratios(r).unwrap()
    }

    fn zero_residual(p: &AParams, x: &MetricTriple) -> bool {
        let (e1, e2) = residual(p, x);
        e1.signum() == Some(0) && e2.signum() == Some(0)
    }

    #[test]
    fn residuals_vanish_at_known_metrics() {
        let m = |x| MetricTriple::from_ints(x).unwrap();
        assert!(zero_residual(&a([(1, 4), (1, 4), (1, 4)]), &m([1, 1, 1])));
        assert!(zero_residual(&a([(1, 6), (1, 6), (1, 6)]), &m([1, 1, 2])));
        assert!(zero_residual(&a([(5, 24), (5, 24), (1, 6)]), &m([3, 3, 4])));
        assert!(!zero_residual(&a([(1, 6), (1, 6), (1, 6)]), &m([2, 2, 3])));
    }

    #[test]
    fn four_metrics_at_the_o1_reference() {
        let sols = solve(&a([(1, 6), (1, 6), (1, 6)]), &default_width()).unwrap();
        assert_eq!(sols.len(), 4);
        let want = [[1, 1, 1], [2, 1, 1], [1, 2, 1], [1, 1, 2]].map(|x| MetricTriple::from_ints(x).unwrap());
        for w in &want {
            assert!(sols.iter().any(|s| homothetic(&s.metric, w, &default_width()).unwrap()));
        }
        assert!(sols.iter().all(|s| s.certificate == Certificate::ExactZero));
    }

    #[test]
    fn one_metric_at_the_quarter_point() {
        let sols = solve(&a([(1, 4), (1, 4), (1, 4)]), &default_width()).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].metric, MetricTriple::from_ints([1, 1, 1]).unwrap());
        assert_eq!(sols[0].multiplicity, 4);
    }

    #[test]
    fn three_metrics_for_t_two() {
        let p = t_family_params(2).unwrap();
        assert_eq!(p, a([(5, 24), (5, 24), (1, 6)]));
        let sols = solve(&p, &default_width()).unwrap();
        assert_eq!(sols.len(), 3);
        let flagged = sols.iter().filter(|s| s.isometric_to.is_some()).count();
        assert_eq!(flagged, 2);
        for m in closed_forms_t_family(2).unwrap() {
            assert!(zero_residual(&p, &m));
            assert!(sols.iter().any(|s| homothetic(&s.metric, &m, &default_width()).unwrap()));
        }
    }

    #[test]
    fn t_two_closed_forms_as_printed() {
        let f = closed_forms_t_family(2).unwrap();
        let s2 = QuadExt::sqrt_of(&q(2, 1));
        let h = QuadExt::rational(q(3, 2)) * s2;
        assert_eq!(f[1].get(0), &Number::Quad(QuadExt::from_i64(8) + h.clone()));
        assert_eq!(f[1].get(1), &Number::Quad(QuadExt::from_i64(8) - h));
        assert_eq!(f[1].get(2), &Number::Rational(q(20, 3)));
        assert!(closed_forms_t_family(1).is_err());
    }

    #[test]
    fn boundary_space_has_one_metric() {
        let k = 3;
        let p = AParams::with_boundary(q(1, 2), q(1, 2 * k), q(1, 2 * k)).unwrap();
        let sols = solve(&p, &default_width()).unwrap();
        assert_eq!(sols.len(), 1);
        let want = MetricTriple::from_ints([2 * k, k + 1, k + 1]).unwrap();
        assert!(homothetic(&sols[0].metric, &want, &default_width()).unwrap());
    }

    #[test]
    fn o3_reference_has_two_irrational_metrics() {
        let sols = solve(&a([(1, 6), (1, 4), (1, 3)]), &default_width()).unwrap();
        assert_eq!(sols.len(), 2);
        for s in &sols {
            for iv in &s.enclosure {
                assert!(iv.width() <= default_width());
            }
        }
    }
}
