//! Normalized Ricci flow on diagonal metrics: the vector field, the chart on
//! the volume-one surface, linearization at equilibria and RK4 trajectories.
//!
//! The field is homogeneous of degree zero, so every formula below is written
//! with the reciprocals `1/x_i` supplied by the caller. That keeps it generic
//! over rings without division (intervals) as well as over floats.

use num_rational::BigRational;
use num_traits::Zero;

use crate::einstein::{default_width, solve};
use crate::error::{Error, Result};
use crate::exactnum::{Interval, Number};
use crate::hifloat::HiFloat;
use crate::scalar::{FieldScalar, Real, Scalar};
use crate::wallach::{GWSpace, MetricTriple};

/// Principal Ricci values from `x` and its reciprocals.
pub fn ricci_with<T: Scalar>(a: &[BigRational; 3], x: &[T; 3], inv: &[T; 3]) -> [T; 3] {
    let half = T::from_ratio(1, 2);
    let inv_p = inv[0].clone() * inv[1].clone() * inv[2].clone();
    [0, 1, 2].map(|i| {
        let (j, k) = others(i);
        let n = x[i].square() - x[j].square() - x[k].square();
        half.clone() * inv[i].clone()
            + T::from_rational(&(&a[i] / BigRational::from_integer(2.into()))) * n * inv_p.clone()
    })
}

fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// `2 x1 x2 x3 (r1 - r3)` and `2 x1 x2 x3 (r2 - r3)`: the Ricci differences
/// with denominators cleared, polynomial in `x`.
pub fn ricci_differences_cleared<T: Scalar>(a: &[BigRational; 3], x: &[T; 3]) -> [T; 2] {
    let c = |v: &BigRational| T::from_rational(v);
    let n = |i: usize| {
        let (j, k) = others(i);
        x[i].square() - x[j].square() - x[k].square()
    };
    let [x1, x2, x3] = x.clone();
    let t3 = x1.clone() * x2.clone() + c(&a[2]) * n(2);
    [
        x2 * x3.clone() + c(&a[0]) * n(0) - t3.clone(),
        x1 * x3 + c(&a[1]) * n(1) - t3,
    ]
}

/// The Ricci triple at a positive metric: exact when the metric lives in one
/// quadratic field, an enclosure otherwise.
pub fn ricci_components(space: &GWSpace, x: &MetricTriple) -> Result<[Number; 3]> {
    let a = space.params.as_array();
    if let Some(xq) = x.as_quads() {
        let inv = xq.clone().map(|v| v.recip());
        return Ok(ricci_with(a, &xq, &inv).map(Number::from));
    }
    let xi = x.enclosures(256);
    let inv = interval_recips(&xi)?;
    Ok(ricci_with(a, &xi, &inv).map(Number::from))
}

fn interval_recips(x: &[Interval; 3]) -> Result<[Interval; 3]> {
    let inv: Vec<Interval> = x.iter().map(|v| v.recip().ok_or(Error::NonPositiveMetric)).collect::<Result<_>>()?;
    Ok([inv[0].clone(), inv[1].clone(), inv[2].clone()])
}

/// Weighted average `S = sum d_j r_j / sum d_j`.
fn mean_curvature<T: Scalar>(d: &[BigRational; 3], r: &[T; 3]) -> T {
    let total: BigRational = d.iter().cloned().fold(BigRational::zero(), |s, v| s + v);
    let w = |i: usize| T::from_rational(&(&d[i] / &total));
    w(0) * r[0].clone() + w(1) * r[1].clone() + w(2) * r[2].clone()
}

fn field_with<T: Scalar>(space: &GWSpace, x: &[T; 3], inv: &[T; 3]) -> [T; 3] {
    let r = ricci_with(space.params.as_array(), x, inv);
    let s = mean_curvature(&space.d, &r);
    let m2 = T::from_i64(-2);
    [0, 1, 2].map(|i| m2.clone() * x[i].clone() * (r[i].clone() - s.clone()))
}

/// `dx_i/dt = -2 x_i (r_i - S)`, exact or enclosed like [`ricci_components`].
pub fn vector_field(space: &GWSpace, x: &MetricTriple) -> Result<[Number; 3]> {
    if let Some(xq) = x.as_quads() {
        let inv = xq.clone().map(|v| v.recip());
        return Ok(field_with(space, &xq, &inv).map(Number::from));
    }
    let xi = x.enclosures(256);
    let inv = interval_recips(&xi)?;
    Ok(field_with(space, &xi, &inv).map(Number::from))
}

/// `a`, `d` and the normalized weights converted once into a float type.
#[derive(Clone, Debug)]
pub struct Coeffs<T> {
    pub a: [T; 3],
    pub d: [T; 3],
    /// `d_i / sum d`
    pub w: [T; 3],
}

impl<T: Real> Coeffs<T> {
    pub fn new(space: &GWSpace) -> Self {
        let total: BigRational = space.d.iter().cloned().fold(BigRational::zero(), |s, v| s + v);
        Coeffs {
            a: [0, 1, 2].map(|i| T::from_rational(space.a(i))),
            d: [0, 1, 2].map(|i| T::from_rational(&space.d[i])),
            w: [0, 1, 2].map(|i| T::from_rational(&(&space.d[i] / &total))),
        }
    }

    pub fn ricci(&self, x: &[T; 3]) -> [T; 3] {
        let half = T::from_ratio(1, 2);
        let p = x[0].clone() * x[1].clone() * x[2].clone();
        [0, 1, 2].map(|i| {
            let (j, k) = others(i);
            let n = x[i].square() - x[j].square() - x[k].square();
            half.clone() / x[i].clone() + half.clone() * self.a[i].clone() * n / p.clone()
        })
    }

    pub fn mean(&self, r: &[T; 3]) -> T {
        self.w[0].clone() * r[0].clone() + self.w[1].clone() * r[1].clone() + self.w[2].clone() * r[2].clone()
    }

    pub fn field(&self, x: &[T; 3]) -> [T; 3] {
        let r = self.ricci(x);
        let s = self.mean(&r);
        let m2 = T::from_i64(-2);
        [0, 1, 2].map(|i| m2.clone() * x[i].clone() * (r[i].clone() - s.clone()))
    }

    pub fn log_volume(&self, x: &[T; 3]) -> T {
        (0..3).fold(T::zero(), |acc, i| acc + self.d[i].clone() * x[i].ln())
    }

    /// `x3` on the surface `x1^d1 x2^d2 x3^d3 = exp(log_vol)`.
    pub fn chart_x3(&self, x1: &T, x2: &T, log_vol: &T) -> T {
        let e = log_vol.clone() - self.d[0].clone() * x1.ln() - self.d[1].clone() * x2.ln();
        (e / self.d[2].clone()).exp()
    }

    /// Rescale `x` onto the volume-one surface.
    pub fn normalize(&self, x: &[T; 3]) -> [T; 3] {
        let total = self.d[0].clone() + self.d[1].clone() + self.d[2].clone();
        let lambda = (-(self.log_volume(x) / total)).exp();
        x.clone().map(|v| v * lambda.clone())
    }

    /// First two field components on the volume-one chart.
    pub fn reduced_field(&self, x1: &T, x2: &T) -> [T; 2] {
        let x3 = self.chart_x3(x1, x2, &T::zero());
        let v = self.field(&[x1.clone(), x2.clone(), x3]);
        [v[0].clone(), v[1].clone()]
    }

    /// Partial derivatives `dr_i/dx_m` of the Ricci triple.
    fn ricci_partials(&self, x: &[T; 3]) -> [[T; 3]; 3] {
        let half = T::from_ratio(1, 2);
        let two = T::from_i64(2);
        let p = x[0].clone() * x[1].clone() * x[2].clone();
        [0, 1, 2].map(|i| {
            let (j, k) = others(i);
            let n = x[i].square() - x[j].square() - x[k].square();
            [0, 1, 2].map(|m| {
                let dn = if m == i {
                    two.clone() * x[m].clone()
                } else {
                    -(two.clone() * x[m].clone())
                };
                let mut v = half.clone() * self.a[i].clone() * (dn - n.clone() / x[m].clone()) / p.clone();
                if m == i {
                    v = v - half.clone() / x[i].square();
                }
                v
            })
        })
    }

    /// Full 3x3 Jacobian of the field.
    pub fn field_jacobian(&self, x: &[T; 3]) -> [[T; 3]; 3] {
        let r = self.ricci(x);
        let s = self.mean(&r);
        let dr = self.ricci_partials(x);
        let ds: [T; 3] = [0, 1, 2].map(|m| {
            (0..3).fold(T::zero(), |acc, j| acc + self.w[j].clone() * dr[j][m].clone())
        });
        let m2 = T::from_i64(-2);
        [0, 1, 2].map(|i| {
            [0, 1, 2].map(|k| {
                let mut v = m2.clone() * x[i].clone() * (dr[i][k].clone() - ds[k].clone());
                if i == k {
                    v = v + m2.clone() * (r[i].clone() - s.clone());
                }
                v
            })
        })
    }

    /// Jacobian of [`Coeffs::reduced_field`] by the chain rule through `x3`.
    pub fn reduced_jacobian(&self, x1: &T, x2: &T) -> [[T; 2]; 2] {
        let x3 = self.chart_x3(x1, x2, &T::zero());
        let x = [x1.clone(), x2.clone(), x3.clone()];
        let full = self.field_jacobian(&x);
        let dx3 = [0, 1].map(|j| -(self.d[j].clone() / self.d[2].clone()) * x3.clone() / x[j].clone());
        [0, 1].map(|i| [0, 1].map(|j| full[i][j].clone() + full[i][2].clone() * dx3[j].clone()))
    }
}

/// Below this magnitude an eigenvalue counts as zero, and an imaginary part
/// as absent.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub enum Eigenvalues {
    Real(HiFloat, HiFloat),
    Complex { re: HiFloat, im: HiFloat },
}

impl Eigenvalues {
    fn of(m: &[[HiFloat; 2]; 2]) -> Self {
        let tr = m[0][0].clone() + m[1][1].clone();
        let det = m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone();
        let half = HiFloat::from_ratio(1, 2);
        let disc = tr.square() - HiFloat::from_i64(4) * det;
        if !disc.is_negative() {
            let s = disc.sqrt();
            return Eigenvalues::Real(half.clone() * (tr.clone() - s.clone()), half * (tr + s));
        }
        let im = half.clone() * (-disc).sqrt();
        let re = half * tr;
        if im.to_f64() < DEGENERACY_THRESHOLD {
            Eigenvalues::Real(re.clone(), re)
        } else {
            Eigenvalues::Complex { re, im }
        }
    }

    pub fn to_f64(&self) -> [(f64, f64); 2] {
        match self {
            Eigenvalues::Real(p, q) => [(p.to_f64(), 0.0), (q.to_f64(), 0.0)],
            Eigenvalues::Complex { re, im } => [(re.to_f64(), im.to_f64()), (re.to_f64(), -im.to_f64())],
        }
    }

    /// Smallest modulus.
    pub fn min_modulus(&self) -> f64 {
        match self {
            Eigenvalues::Real(p, q) => p.to_f64().abs().min(q.to_f64().abs()),
            Eigenvalues::Complex { re, im } => re.to_f64().hypot(im.to_f64()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StabilityClass {
    StableNode,
    UnstableNode,
    Saddle,
    Focus,
    Degenerate,
}

impl StabilityClass {
    pub fn name(self) -> &'static str {
        match self {
            StabilityClass::StableNode => "stable_node",
            StabilityClass::UnstableNode => "unstable_node",
            StabilityClass::Saddle => "saddle",
            StabilityClass::Focus => "focus",
            StabilityClass::Degenerate => "degenerate",
        }
    }

    fn of(ev: &Eigenvalues) -> Self {
        if ev.min_modulus() < DEGENERACY_THRESHOLD {
            return StabilityClass::Degenerate;
        }
        match ev {
            Eigenvalues::Complex { .. } => StabilityClass::Focus,
            Eigenvalues::Real(p, q) => match (p.is_negative(), q.is_negative()) {
                (true, true) => StabilityClass::StableNode,
                (false, false) => StabilityClass::UnstableNode,
                _ => StabilityClass::Saddle,
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct EquilibriumReport {
    /// On the volume-one surface.
    pub metric: MetricTriple,
    /// Of the reduced field in the `(x1, x2)` chart.
    pub jacobian: crate::JacobianHp,
    pub eigenvalues: Eigenvalues,
    pub class: StabilityClass,
}

/// Relative half-width attached to high-precision values turned back into
/// metrics.
fn hi_enclosure(v: &HiFloat) -> Number {
    let c = v.to_rational();
    let eps = c.clone() * BigRational::new(1.into(), num_bigint::BigInt::from(10).pow(50));
    Number::from(Interval::new(&c - &eps, &c + &eps))
}

/// Field norm allowed at a point handed to [`reduce_and_linearize`].
const EQUILIBRIUM_RESIDUAL: f64 = 1e-20;

/// Classify an equilibrium by the eigenvalues of the reduced Jacobian.
pub fn reduce_and_linearize(space: &GWSpace, x_star: &MetricTriple) -> Result<EquilibriumReport> {
    let co = Coeffs::<HiFloat>::new(space);
    let x = x_star.components().clone().map(|v| v.to_hifloat());
    let x = co.normalize(&x);
    let v = co.field(&x);
    let norm = v.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max);
    if norm >= EQUILIBRIUM_RESIDUAL {
        return Err(Error::CertificationFailure(format!(
            "field norm {norm:e} at {x_star:?}; not an equilibrium"
        )));
    }
    let jacobian = co.reduced_jacobian(&x[0], &x[1]);
    let eigenvalues = Eigenvalues::of(&jacobian);
    let class = StabilityClass::of(&eigenvalues);
    let [x1, x2, x3] = x.map(|c| hi_enclosure(&c));
    Ok(EquilibriumReport {
        metric: MetricTriple::new(x1, x2, x3)?,
        jacobian,
        eigenvalues,
        class,
    })
}

/// Solve for every Einstein metric of `space` and classify each.
pub fn equilibria(space: &GWSpace) -> Result<Vec<EquilibriumReport>> {
    solve(&space.params, &default_width())?
        .iter()
        .map(|s| reduce_and_linearize(space, &s.metric))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub x: [f64; 3],
    pub v: [f64; 3],
    pub volume: f64,
    pub mean_curvature: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Halt {
    /// A coordinate fell below [`POSITIVITY_FLOOR`].
    LeftCone,
    NonFinite,
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub halted: Option<Halt>,
    /// Largest `|V(t)/V(0) - 1|` seen.
    pub max_volume_drift: f64,
}

pub const POSITIVITY_FLOOR: f64 = 1e-8;
/// Drift beyond this is blamed on the step size.
pub const DRIFT_LIMIT: f64 = 1e-6;

/// Classical RK4 on the full field, one sample per step.
pub fn integrate(space: &GWSpace, x0: &MetricTriple, t_max: f64, step: f64) -> Result<Trajectory> {
    let x = x0.to_f64();
    integrate_f64(space, x, t_max, step)
}

pub fn integrate_f64(space: &GWSpace, x0: [f64; 3], t_max: f64, step: f64) -> Result<Trajectory> {
    if !(x0.iter().all(|v| v.is_finite() && *v > 0.0)) {
        return Err(Error::NonPositiveStart);
    }
    if !(step > 0.0 && t_max > 0.0 && step.is_finite() && t_max.is_finite()) {
        return Err(Error::BadParam(format!("t_max = {t_max}, step = {step}")));
    }
    if step >= t_max {
        return Err(Error::StepTooLarge(format!("step {step} is not below t_max {t_max}")));
    }
    let co = Coeffs::<f64>::new(space);
    let lv0 = co.log_volume(&x0);
    let sample = |t: f64, x: [f64; 3]| {
        let r = co.ricci(&x);
        Sample {
            t,
            x,
            v: co.field(&x),
            volume: co.log_volume(&x).exp(),
            mean_curvature: co.mean(&r),
        }
    };
    let n = (t_max / step).round() as usize;
    let mut samples = Vec::with_capacity(n + 1);
    samples.push(sample(0.0, x0));
    let mut x = x0;
    let mut drift: f64 = 0.0;
    let mut halted = None;
    let axpy = |x: &[f64; 3], k: &[f64; 3], h: f64| [0, 1, 2].map(|i| x[i] + h * k[i]);
    for s in 1..=n {
        let k1 = co.field(&x);
        let k2 = co.field(&axpy(&x, &k1, step / 2.0));
        let k3 = co.field(&axpy(&x, &k2, step / 2.0));
        let k4 = co.field(&axpy(&x, &k3, step));
        x = [0, 1, 2].map(|i| x[i] + step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
        if x.iter().any(|v| !v.is_finite()) {
            halted = Some(Halt::NonFinite);
            break;
        }
        if x.iter().any(|&v| v < POSITIVITY_FLOOR) {
            halted = Some(Halt::LeftCone);
            break;
        }
        drift = drift.max((co.log_volume(&x) - lv0).exp_m1().abs());
        if drift > DRIFT_LIMIT {
            return Err(Error::StepTooLarge(format!(
                "volume drift {drift:e} at t = {}",
                s as f64 * step
            )));
        }
        samples.push(sample(s as f64 * step, x));
    }
    Ok(Trajectory {
        samples,
        halted,
        max_volume_drift: drift,
    })
}

/// Axis-aligned box in the `(x1, x2)` chart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bounds {
    pub x1: (f64, f64),
    pub x2: (f64, f64),
}

impl Bounds {
    fn check(&self) -> Result<()> {
        for (lo, hi) in [self.x1, self.x2] {
            if !(lo > 0.0 && hi > lo && hi.is_finite()) {
                return Err(Error::BadBounds(format!("[{lo}, {hi}]")));
            }
        }
        Ok(())
    }

    pub fn contains(&self, x1: f64, x2: f64) -> bool {
        (self.x1.0..=self.x1.1).contains(&x1) && (self.x2.0..=self.x2.1).contains(&x2)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PortraitSample {
    pub x1: f64,
    pub x2: f64,
    pub v1: f64,
    pub v2: f64,
}

#[derive(Clone, Debug)]
pub struct Portrait {
    pub samples: Vec<PortraitSample>,
    pub equilibria: Vec<EquilibriumReport>,
}

/// The reduced field on a `grid_n x grid_n` grid over `bounds`, row-major in
/// `x2`, together with every equilibrium of the space.
pub fn portrait_grid(space: &GWSpace, grid_n: usize, bounds: Bounds) -> Result<Portrait> {
    if grid_n < 2 {
        return Err(Error::BadBounds(format!("grid_n = {grid_n}, need at least 2")));
    }
    bounds.check()?;
    let co = Coeffs::<f64>::new(space);
    let at = |(lo, hi): (f64, f64), i: usize| lo + (hi - lo) * i as f64 / (grid_n - 1) as f64;
    let mut samples = Vec::with_capacity(grid_n * grid_n);
    for j in 0..grid_n {
        for i in 0..grid_n {
            let (x1, x2) = (at(bounds.x1, i), at(bounds.x2, j));
            let [v1, v2] = co.reduced_field(&x1, &x2);
            samples.push(PortraitSample { x1, x2, v1, v2 });
        }
    }
    Ok(Portrait {
        samples,
        equilibria: equilibria(space)?,
    })
}

/// A box in the chart containing every equilibrium with a margin.
pub fn default_bounds(reports: &[EquilibriumReport]) -> Bounds {
    let pts: Vec<[f64; 3]> = reports.iter().map(|r| r.metric.to_f64()).collect();
    let span = |i: usize| {
        let lo = pts.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min);
        let hi = pts.iter().map(|p| p[i]).fold(0.0, f64::max);
        if pts.is_empty() {
            (0.5, 2.0)
        } else {
            (lo * 0.5, hi * 1.5)
        }
    };
    Bounds { x1: span(0), x2: span(1) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wallach::AParams;

    fn space(r: [(i64, i64); 3]) -> GWSpace {
        GWSpace::from_params(AParams::from_ratios(r).unwrap())
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn classes(r: [(i64, i64); 3]) -> Vec<StabilityClass> {
        let mut c: Vec<_> = equilibria(&space(r)).unwrap().iter().map(|e| e.class).collect();
        c.sort();
        c
    }

    #[test]
    fn ricci_at_the_standard_metric() {
        let s = space([(1, 6); 3]);
        let r = ricci_components(&s, &MetricTriple::from_ints([1, 1, 1]).unwrap()).unwrap();
        for v in r {
            assert_eq!(v.as_rational(), Some(&q(5, 12)));
        }
    }

    #[test]
    fn ricci_is_constant_at_an_einstein_metric() {
        let s = space([(1, 6); 3]);
        let r = ricci_components(&s, &MetricTriple::from_ints([1, 1, 2]).unwrap()).unwrap();
        assert_eq!(r[0], r[1]);
        assert_eq!(r[1], r[2]);
    }

    #[test]
    fn field_is_nonzero_off_equilibrium() {
        let s = space([(1, 6); 3]);
        let x = MetricTriple::from_rationals([q(1, 1), q(1, 1), q(3, 2)]).unwrap();
        let v = vector_field(&s, &x).unwrap();
        assert!(v.iter().any(|c| c.signum() != Some(0)));
    }

    #[test]
    fn reference_space_stability_classes() {
        use StabilityClass::*;
        assert_eq!(classes([(1, 6); 3]), vec![UnstableNode, Saddle, Saddle, Saddle]);
        assert_eq!(classes([(7, 15); 3]), vec![StableNode, Saddle, Saddle, Saddle]);
        assert_eq!(classes([(1, 6), (1, 4), (1, 3)]), vec![Saddle, Saddle]);
    }

    #[test]
    fn quarter_point_is_degenerate() {
        assert_eq!(classes([(1, 4); 3]), vec![StabilityClass::Degenerate]);
    }

    #[test]
    fn standard_metric_eigenvalue() {
        let s = space([(1, 6); 3]);
        let rep = reduce_and_linearize(&s, &MetricTriple::from_ints([1, 1, 1]).unwrap()).unwrap();
        let [(l1, _), (l2, _)] = rep.eigenvalues.to_f64();
        assert!((l1 - 1.0 / 3.0).abs() < 1e-15);
        assert!((l2 - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn equilibrium_is_stationary() {
        let s = space([(1, 6); 3]);
        let x = MetricTriple::from_ints([1, 1, 2]).unwrap();
        let tr = integrate(&s, &x, 10.0, 1e-3).unwrap();
        for smp in &tr.samples {
            for i in 0..3 {
                assert!((smp.x[i] - x.to_f64()[i]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn volume_is_conserved_near_equilibria() {
        for r in [[(1, 6); 3], [(7, 15); 3], [(1, 6), (1, 4), (1, 3)]] {
            let s = space(r);
            for e in equilibria(&s).unwrap() {
                let x = e.metric.to_f64();
                let x0 = [x[0] * (1.0 + 1e-6), x[1] * (1.0 - 1e-6), x[2]];
                let tr = integrate_f64(&s, x0, 10.0, 1e-3).unwrap();
                assert!(tr.max_volume_drift < 1e-8, "{}", tr.max_volume_drift);
                assert_eq!(tr.samples.len(), 10001);
                assert_eq!(tr.halted, None);
            }
        }
    }

    #[test]
    fn far_start_collapses_in_finite_time() {
        // x2 runs to zero before t = 4; the fixed step cannot follow it
        let r = integrate_f64(&space([(1, 6); 3]), [1.3, 0.8, 1.1], 10.0, 1e-3);
        assert!(matches!(r, Err(Error::StepTooLarge(_))));
    }

    #[test]
    fn rejects_bad_input() {
        let s = space([(1, 6); 3]);
        assert_eq!(integrate_f64(&s, [1.0, -1.0, 1.0], 1.0, 0.1).unwrap_err(), Error::NonPositiveStart);
        assert!(matches!(integrate_f64(&s, [1.0; 3], 1.0, 2.0), Err(Error::StepTooLarge(_))));
        let b = Bounds { x1: (0.0, 1.0), x2: (0.5, 1.0) };
        assert!(matches!(portrait_grid(&s, 4, b), Err(Error::BadBounds(_))));
    }

    #[test]
    fn portrait_shape() {
        let s = space([(1, 6); 3]);
        let b = Bounds { x1: (0.5, 1.5), x2: (0.5, 1.5) };
        let p = portrait_grid(&s, 2, b).unwrap();
        assert_eq!(p.samples.len(), 4);
        assert_eq!(p.equilibria.len(), 4);
    }
}
