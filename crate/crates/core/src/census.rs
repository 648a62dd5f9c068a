//! The spaces `SO(k+l+m) / SO(k) x SO(l) x SO(m)`: the integer form `G` of
//! `Q`, region and metric-count prediction, and sweeps over small triples.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::einstein;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::wallach::{AParams, GWSpace, Provenance, Region};

/// A triple stored in the order `k >= l >= m >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SOTriple {
    k: u64,
    l: u64,
    m: u64,
}

impl SOTriple {
    /// Sorts its arguments.
    pub fn new(k: u64, l: u64, m: u64) -> Result<Self> {
        if k == 0 || l == 0 || m == 0 {
            return Err(Error::BadParams(format!("({k}, {l}, {m}) has a zero entry")));
        }
        let mut v = [k, l, m];
        v.sort_unstable_by(|a, b| b.cmp(a));
        Ok(SOTriple { k: v[0], l: v[1], m: v[2] })
    }

    pub fn k(&self) -> u64 {
        self.k
    }
    pub fn l(&self) -> u64 {
        self.l
    }
    pub fn m(&self) -> u64 {
        self.m
    }
    pub fn as_array(&self) -> [u64; 3] {
        [self.k, self.l, self.m]
    }

    pub fn n(&self) -> u64 {
        self.k + self.l + self.m
    }

    /// `l = m = 1`, where `a1 = 1/2`.
    pub fn is_boundary(&self) -> bool {
        self.l == 1 && self.m == 1
    }

    /// `l = 1` with `m >= 2`. Never true for a sorted triple; kept so the
    /// check is explicit.
    pub fn is_small_l(&self) -> bool {
        self.l == 1 && self.m >= 2
    }

    /// `(k+l+m) / (2(k+l+m-2))`
    pub fn h0(&self) -> BigRational {
        let n = self.n() as i64;
        BigRational::new(n.into(), (2 * (n - 2)).into())
    }

    pub fn elementary(&self) -> ElemTriple {
        let [k, l, m] = self.as_array().map(BigInt::from);
        ElemTriple {
            t1: &k + &l + &m,
            t2: &k * &l + &k * &m + &l * &m,
            t3: k * l * m,
        }
    }
}

impl fmt::Display for SOTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.k, self.l, self.m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElemTriple {
    pub t1: BigInt,
    pub t2: BigInt,
    pub t3: BigInt,
}

fn so_params(t: &SOTriple) -> Result<AParams> {
    let two_n = BigInt::from(2 * (t.n() - 2));
    let [a1, a2, a3] = t.as_array().map(|v| BigRational::new(v.into(), two_n.clone()));
    AParams::with_boundary(a1, a2, a3)
}

fn so_space_unchecked(t: &SOTriple) -> Result<GWSpace> {
    let [k, l, m] = t.as_array().map(|v| BigRational::from_integer(v.into()));
    Ok(GWSpace {
        params: so_params(t)?,
        // a_i d_i is constant: d_i is the product of the other two sizes
        d: [&l * &m, &k * &m, &k * &l],
        provenance: Provenance::SOTriple(t.k, t.l, t.m),
    })
}

/// The generalized Wallach space of the triple. Boundary triples are refused;
/// use [`so_space_boundary`] for them.
pub fn so_space(t: &SOTriple) -> Result<GWSpace> {
    if t.is_boundary() {
        return Err(Error::BoundaryTriple(t.k));
    }
    so_space_unchecked(t)
}

/// Like [`so_space`] but accepts `(k, 1, 1)`.
pub fn so_space_boundary(t: &SOTriple) -> Result<GWSpace> {
    so_space_unchecked(t)
}

/// `H(t1, t2, t3)` over any commutative ring.
pub fn h_poly<T: Scalar>(t1: &T, t2: &T, t3: &T) -> T {
    let c = |n: i64| T::from_i64(n);
    let u = t1.clone() - c(2);
    let up = |e: u32| u.powu(e);
    let t1p = |e: u32| t1.powu(e);
    let lead = c(16) * up(2) + c(4) * t3.clone();
    let big = c(1024) * t1p(5) * up(4) - c(2048) * t1p(4) * up(5) + c(512) * t1p(3) * up(6)
        + c(1536) * t1p(2) * up(7)
        - c(1536) * t1.clone() * up(8)
        + c(512) * up(9)
        + c(3840) * t3.clone() * t1p(2) * up(4)
        - c(4096) * t3.powu(3)
        - c(7680) * t3.clone() * t1.clone() * up(5)
        - c(6144) * t3.square() * t1.clone() * up(2)
        + c(3840) * t3.clone() * up(6)
        + c(6144) * t3.square() * up(3);
    let mid = c(16) * up(2) - c(32) * t3.clone();
    let quad = c(832) * up(6) - c(1664) * t1.clone() * up(5)
        + c(2560) * t3.clone() * t1.clone() * up(2)
        + c(1024) * t3.square()
        - c(2560) * t3.clone() * up(3)
        + c(832) * t1p(2) * up(4);
    lead.clone() * big
        - c(8) * t1.clone() * lead * mid.clone() * (c(80) * up(2) + c(32) * t3.clone()) * t2.clone()
        - c(16) * t1p(2) * quad * t2.square()
        + c(1024) * up(2) * mid * t2.powu(3)
        + c(32768) * t1.clone() * t2.powu(4) * up(2)
}

pub fn eval_h(t: &ElemTriple) -> BigInt {
    let r = |v: &BigInt| BigRational::from_integer(v.clone());
    h_poly(&r(&t.t1), &r(&t.t2), &r(&t.t3)).to_integer()
}

/// `G(k, l, m) = 2^12 (k+l+m-2)^12 Q(a)` as an exact integer.
pub fn eval_g(t: &SOTriple) -> BigInt {
    let g = eval_h(&t.elementary());
    debug_assert!(g_matches_q(t, &g), "G and Q disagree at {t}");
    g
}

/// The scaling identity between `G` and `Q` at one triple.
pub fn g_matches_q(t: &SOTriple, g: &BigInt) -> bool {
    let Ok(a) = so_params(t) else {
        return false;
    };
    let scale = BigInt::from(2).pow(12) * BigInt::from(t.n() - 2).pow(12);
    crate::omega::eval_q(&a) * BigRational::from_integer(scale) == BigRational::from_integer(g.clone())
}

/// Metric count predicted from the region alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PredictedCount {
    One,
    Two,
    Four,
    Unresolved,
}

impl PredictedCount {
    pub fn as_number(self) -> Option<usize> {
        match self {
            PredictedCount::One => Some(1),
            PredictedCount::Two => Some(2),
            PredictedCount::Four => Some(4),
            PredictedCount::Unresolved => None,
        }
    }
}

impl fmt::Display for PredictedCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_number() {
            Some(n) => write!(f, "{n}"),
            None => f.write_str("unresolved"),
        }
    }
}

/// Sufficient conditions for the sign of `G`, each checked in integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BoundFlags {
    /// `m^2 > 2k + 2l - 4`, which forces four metrics
    pub four_bound: bool,
    /// `m^2 < k + l`, which forces two metrics
    pub two_bound: bool,
    /// `m < (1 + sqrt(k+l))(k+l-2)/(k+l-1)` with the radical cleared
    pub sharp_two_bound: bool,
    /// `m = 1`, `m = 2` with `k + l >= 5`, or `m = 3` with `k + l >= 7`
    pub small_m: bool,
    pub small_l: bool,
}

impl BoundFlags {
    pub fn of(t: &SOTriple) -> Self {
        let (k, l, m) = (t.k as i128, t.l as i128, t.m as i128);
        let s = k + l;
        BoundFlags {
            four_bound: m * m > 2 * s - 4,
            two_bound: m * m < s,
            sharp_two_bound: (s - 1) * m * m - 2 * (s - 2) * m - s * s + 4 * s - 4 < 0,
            small_m: m == 1 || (m == 2 && s >= 5) || (m == 3 && s >= 7),
            small_l: t.is_small_l(),
        }
    }

    /// Names of the set flags joined by `|`, or `-`.
    pub fn label(&self) -> String {
        let names: Vec<&str> = [
            (self.four_bound, "four_bound"),
            (self.two_bound, "two_bound"),
            (self.sharp_two_bound, "sharp_two_bound"),
            (self.small_m, "small_m"),
            (self.small_l, "small_l"),
        ]
        .into_iter()
        .filter_map(|(on, n)| on.then_some(n))
        .collect();
        if names.is_empty() {
            "-".into()
        } else {
            names.join("|")
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CensusRecord {
    pub triple: SOTriple,
    pub g: BigInt,
    pub region: Region,
    pub predicted: PredictedCount,
    pub solved: Option<usize>,
    pub flags: BoundFlags,
}

impl CensusRecord {
    pub fn g_sign(&self) -> i32 {
        if self.g.is_zero() {
            0
        } else if self.g.is_negative() {
            -1
        } else {
            1
        }
    }

    /// Predicted and solved counts agree wherever both exist.
    pub fn is_consistent(&self) -> bool {
        match (self.predicted.as_number(), self.solved) {
            (Some(p), Some(s)) => p == s,
            _ => true,
        }
    }
}

pub fn region_of_g(g: &BigInt) -> Region {
    if g.is_zero() {
        Region::Omega
    } else if g.is_negative() {
        Region::O1
    } else {
        Region::O3
    }
}

/// Region from the sign of `G`, with the count that region forces.
pub fn classify_so(t: &SOTriple) -> CensusRecord {
    let g = eval_g(t);
    let (region, predicted) = if t.is_boundary() {
        (Region::BoundaryCube, PredictedCount::One)
    } else {
        let region = region_of_g(&g);
        let predicted = match region {
            Region::O1 => PredictedCount::Four,
            Region::O3 => PredictedCount::Two,
            _ => PredictedCount::Unresolved,
        };
        (region, predicted)
    };
    CensusRecord {
        triple: *t,
        g,
        region,
        predicted,
        solved: None,
        flags: BoundFlags::of(t),
    }
}

/// [`classify_so`] followed by a certified solve.
pub fn classify_and_solve(t: &SOTriple) -> Result<CensusRecord> {
    let mut rec = classify_so(t);
    let space = so_space_boundary(t)?;
    rec.solved = Some(einstein::count(&space.params)?.classes);
    Ok(rec)
}

/// Sorted triples with `5 <= k+l+m <= n_max`, either `l >= 2` or
/// `l = m = 1`, ordered by `n` ascending, then `k` and `l` descending.
pub fn triples_up_to(n_max: u64) -> Vec<SOTriple> {
    let mut out = Vec::new();
    for n in 3..=n_max {
        for k in (1..=n).rev() {
            for l in (1..=k.min(n - k)).rev() {
                let m = n - k - l;
                if m == 0 || m > l {
                    continue;
                }
                let t = SOTriple { k, l, m };
                if (l >= 2 && n >= 5) || t.is_boundary() && k >= 2 {
                    out.push(t);
                }
            }
        }
    }
    out
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::BadParam(format!("worker pool: {e}")))
}

/// Every triple of [`triples_up_to`], classified (and solved when asked) on
/// `workers` threads. The output order does not depend on `workers`.
pub fn sweep(n_max: u64, solve: bool, workers: usize) -> Result<Vec<CensusRecord>> {
    if n_max < 5 {
        return Err(Error::BadParam(format!("n_max = {n_max}, need at least 5")));
    }
    let triples = triples_up_to(n_max);
    pool(workers)?.install(|| {
        triples
            .par_iter()
            .map(|t| if solve { classify_and_solve(t) } else { Ok(classify_so(t)) })
            .collect()
    })
}

/// Membership of a `G = 0` triple in the family `(t^2+1, t^2+1, 2t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroFamily {
    Known { t: u64 },
    Novel,
}

impl ZeroFamily {
    pub fn of(tr: &SOTriple) -> Self {
        if tr.k == tr.l && tr.m.is_multiple_of(2) {
            let t = tr.m / 2;
            if t * t + 1 == tr.k {
                return ZeroFamily::Known { t };
            }
        }
        ZeroFamily::Novel
    }
}

impl fmt::Display for ZeroFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZeroFamily::Known { t } => write!(f, "t={t}"),
            ZeroFamily::Novel => f.write_str("NOVEL"),
        }
    }
}

/// All triples with `l >= 2`, `k+l+m <= n_max` and `G = 0`.
pub fn scan_zeros(n_max: u64, workers: usize) -> Result<Vec<(SOTriple, ZeroFamily)>> {
    if n_max < 6 {
        return Err(Error::BadParam(format!("n_max = {n_max}, need at least 6")));
    }
    let triples: Vec<SOTriple> = triples_up_to(n_max).into_iter().filter(|t| t.l >= 2).collect();
    let hits: Vec<Option<(SOTriple, ZeroFamily)>> = pool(workers)?.install(|| {
        triples
            .par_iter()
            .map(|t| eval_g(t).is_zero().then(|| (*t, ZeroFamily::of(t))))
            .collect()
    });
    Ok(hits.into_iter().flatten().collect())
}

/// Triples violating either sufficient bound: `m^2 > 2k+2l-4` with `G >= 0`,
/// or `m^2 < k+l` with `G <= 0`.
pub fn bound_violations(n_max: u64, workers: usize) -> Result<Vec<SOTriple>> {
    let recs = sweep(n_max, false, workers)?;
    Ok(recs
        .into_iter()
        .filter(|r| r.triple.l >= 2)
        .filter(|r| {
            (r.flags.four_bound && r.g_sign() >= 0) || (r.flags.two_bound && r.g_sign() <= 0)
        })
        .map(|r| r.triple)
        .collect())
}

/// Table of small triples and the region printed for each, in print order.
/// `(5,5,4)` is printed as `O3` although `G(5,5,4) = 0`.
pub const TABLE3: [(u64, u64, u64, Region); 45] = {
    use Region::{O1, O3};
    [
        (4, 2, 1, O3), (3, 3, 1, O3), (3, 2, 2, O3),
        (5, 2, 1, O3), (4, 3, 1, O3), (4, 2, 2, O3), (3, 3, 2, O3),
        (6, 2, 1, O3), (5, 3, 1, O3), (4, 4, 1, O3), (5, 2, 2, O3), (4, 3, 2, O3), (3, 3, 3, O1),
        (7, 2, 1, O3), (6, 3, 1, O3), (5, 4, 1, O3), (6, 2, 2, O3), (5, 3, 2, O3), (4, 4, 2, O3),
        (4, 3, 3, O3),
        (8, 2, 1, O3), (7, 3, 1, O3), (6, 4, 1, O3), (5, 5, 1, O3), (7, 2, 2, O3), (6, 3, 2, O3),
        (5, 4, 2, O3), (5, 3, 3, O3), (4, 4, 3, O3),
        (9, 2, 1, O3), (8, 3, 1, O3), (7, 4, 1, O3), (6, 5, 1, O3), (8, 2, 2, O3), (7, 3, 2, O3),
        (6, 4, 2, O3), (5, 5, 2, O3), (6, 3, 3, O3), (5, 4, 3, O3), (4, 4, 4, O1),
        (5, 4, 4, O1), (6, 4, 4, O1), (5, 5, 4, O3), (6, 5, 5, O1), (7, 6, 5, O1),
    ]
};

/// One row of the table reproduction.
#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub record: CensusRecord,
    pub expected: Region,
}

impl TableRow {
    pub fn pass(&self) -> bool {
        self.record.region == self.expected
    }
}

pub fn table3(workers: usize) -> Result<Vec<TableRow>> {
    let rows: Vec<(SOTriple, Region)> = TABLE3
        .iter()
        .map(|&(k, l, m, r)| Ok((SOTriple::new(k, l, m)?, r)))
        .collect::<Result<_>>()?;
    pool(workers)?.install(|| {
        Ok(rows
            .par_iter()
            .map(|(t, r)| TableRow {
                record: classify_so(t),
                expected: *r,
            })
            .collect())
    })
}
