//! Parameters, effective dimensions and the catalog of generalized Wallach
//! spaces with simple isometry group.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exactnum::{Interval, Number, QuadExt};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn half() -> BigRational {
    q(1, 2)
}

/// The triple `(a1, a2, a3)`, kept in the order given.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AParams {
    a: [BigRational; 3],
    boundary: bool,
}

impl AParams {
    /// Interior point of the cube: every `a_i` strictly between 0 and 1/2.
    pub fn new(a1: BigRational, a2: BigRational, a3: BigRational) -> Result<Self> {
        let p = Self::with_boundary(a1, a2, a3)?;
        if p.boundary {
            return Err(Error::OutOfCube(format!("{p:?} has a coordinate equal to 1/2")));
        }
        Ok(p)
    }

    /// Like [`AParams::new`] but admits coordinates equal to 1/2, flagging
    /// the result as a boundary point.
    pub fn with_boundary(a1: BigRational, a2: BigRational, a3: BigRational) -> Result<Self> {
        let a = [a1, a2, a3];
        for x in &a {
            if !x.is_positive() || *x > half() {
                return Err(Error::OutOfCube(x.to_string()));
            }
        }
        let boundary = a.iter().any(|x| *x == half());
        Ok(AParams { a, boundary })
    }

    pub fn from_ratios(r: [(i64, i64); 3]) -> Result<Self> {
        Self::new(q(r[0].0, r[0].1), q(r[1].0, r[1].1), q(r[2].0, r[2].1))
    }

    pub fn diagonal(a: BigRational) -> Result<Self> {
        Self::new(a.clone(), a.clone(), a)
    }

    pub fn as_array(&self) -> &[BigRational; 3] {
        &self.a
    }

    pub fn get(&self, i: usize) -> &BigRational {
        &self.a[i]
    }

    pub fn is_boundary(&self) -> bool {
        self.boundary
    }

    /// `out[i] = self[perm[i]]`.
    pub fn permuted(&self, perm: [usize; 3]) -> AParams {
        AParams {
            a: perm.map(|i| self.a[i].clone()),
            boundary: self.boundary,
        }
    }
}

impl fmt::Debug for AParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a[0], self.a[1], self.a[2])
    }
}

/// Parameters of a catalog family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineParams {
    None,
    Klm(u64, u64, u64),
    L(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Table1Line { line: u32, params: LineParams },
    SOTriple(u64, u64, u64),
    Abstract,
}

/// A generalized Wallach space, known through `a` and effective dimensions `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GWSpace {
    pub params: AParams,
    pub d: [BigRational; 3],
    pub provenance: Provenance,
}

impl GWSpace {
    /// Off-catalog point with weights `d_i = 1/a_i`.
    pub fn from_params(params: AParams) -> Self {
        let d = [0, 1, 2].map(|i| params.get(i).recip());
        GWSpace {
            params,
            d,
            provenance: Provenance::Abstract,
        }
    }

    pub fn a(&self, i: usize) -> &BigRational {
        self.params.get(i)
    }

    /// Relabel both `a` and `d` by the same permutation.
    pub fn permuted(&self, perm: [usize; 3]) -> GWSpace {
        GWSpace {
            params: self.params.permuted(perm),
            d: perm.map(|i| self.d[i].clone()),
            provenance: self.provenance.clone(),
        }
    }
}

/// Components of `(0, 1/2)^3 \ Ω`, the surface itself, and the cube boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    O1,
    O2,
    O3,
    Omega,
    BoundaryCube,
}

impl Region {
    pub fn name(self) -> &'static str {
        match self {
            Region::O1 => "O1",
            Region::O2 => "O2",
            Region::O3 => "O3",
            Region::Omega => "Omega",
            Region::BoundaryCube => "BoundaryCube",
        }
    }

    pub fn parse(s: &str) -> Option<Region> {
        Some(match s {
            "O1" => Region::O1,
            "O2" => Region::O2,
            "O3" => Region::O3,
            "Omega" => Region::Omega,
            "BoundaryCube" => Region::BoundaryCube,
            _ => return None,
        })
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Catalog expectation for a line: one region, or the union listed for line 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expected {
    Region(Region),
    Mixed(Vec<Region>),
}

/// Printed region assignment for each catalog line, in line order.
pub const EXPECTED_REGIONS: [Option<Region>; 15] = [
    None,
    Some(Region::O1),
    Some(Region::O1),
    Some(Region::O1),
    Some(Region::O3),
    Some(Region::O3),
    Some(Region::O1),
    Some(Region::O3),
    Some(Region::O1),
    Some(Region::O3),
    Some(Region::O2),
    Some(Region::O3),
    Some(Region::O2),
    Some(Region::O3),
    Some(Region::O1),
];

pub fn expected_region(line: u32) -> Result<Expected> {
    if !(1..=15).contains(&line) {
        return Err(Error::BadLine(line));
    }
    Ok(match EXPECTED_REGIONS[line as usize - 1] {
        Some(r) => Expected::Region(r),
        None => Expected::Mixed(vec![Region::O1, Region::O3, Region::Omega]),
    })
}

/// One row of the catalog: the Lie algebra pair and the closed forms.
#[derive(Clone, Debug)]
pub struct CatalogLine {
    pub line: u32,
    pub g: &'static str,
    pub h: &'static str,
    pub constraint: &'static str,
    pub d: [&'static str; 3],
    pub a: [&'static str; 3],
}

const fn row(
    line: u32,
    g: &'static str,
    h: &'static str,
    constraint: &'static str,
    d: [&'static str; 3],
    a: [&'static str; 3],
) -> CatalogLine {
    CatalogLine { line, g, h, constraint, d, a }
}

pub const CATALOG: [CatalogLine; 15] = [
    row(1, "so(k+l+m)", "so(k)+so(l)+so(m)", "k,l,m >= 1",
        ["k*l", "k*m", "l*m"], ["m/(2(k+l+m-2))", "l/(2(k+l+m-2))", "k/(2(k+l+m-2))"]),
    row(2, "su(k+l+m)", "s(u(k)+u(l)+u(m))", "k,l,m >= 1",
        ["2*k*l", "2*k*m", "2*l*m"], ["m/(2(k+l+m))", "l/(2(k+l+m))", "k/(2(k+l+m))"]),
    row(3, "sp(k+l+m)", "sp(k)+sp(l)+sp(m)", "k,l,m >= 1",
        ["4*k*l", "4*k*m", "4*l*m"], ["m/(2(k+l+m+1))", "l/(2(k+l+m+1))", "k/(2(k+l+m+1))"]),
    row(4, "su(2l)", "u(l)", "l >= 2",
        ["l(l-1)", "l(l+1)", "l^2-1"], ["(l+1)/(4l)", "(l-1)/(4l)", "1/4"]),
    row(5, "so(2l)", "u(1)+u(l-1)", "l >= 4",
        ["2(l-1)", "2(l-1)", "(l-1)(l-2)"], ["(l-2)/(4(l-1))", "(l-2)/(4(l-1))", "1/(2(l-1))"]),
    row(6, "e6", "su(4)+2sp(1)+R", "", ["16", "16", "24"], ["1/4", "1/4", "1/6"]),
    row(7, "e6", "so(8)+R^2", "", ["16", "16", "16"], ["1/6", "1/6", "1/6"]),
    row(8, "e6", "sp(3)+sp(1)", "", ["14", "28", "12"], ["1/4", "1/8", "7/24"]),
    row(9, "e7", "so(8)+3sp(1)", "", ["32", "32", "32"], ["2/9", "2/9", "2/9"]),
    row(10, "e7", "su(6)+sp(1)+R", "", ["30", "40", "24"], ["2/9", "1/6", "5/18"]),
    row(11, "e7", "so(8)", "", ["35", "35", "35"], ["5/18", "5/18", "5/18"]),
    row(12, "e8", "so(12)+2sp(1)", "", ["64", "64", "48"], ["1/5", "1/5", "4/15"]),
    row(13, "e8", "so(8)+so(8)", "", ["64", "64", "64"], ["4/15", "4/15", "4/15"]),
    row(14, "f4", "so(5)+2sp(1)", "", ["8", "8", "20"], ["5/18", "5/18", "1/9"]),
    row(15, "f4", "so(8)", "", ["8", "8", "8"], ["1/9", "1/9", "1/9"]),
];

fn parse_fixed(s: &str) -> BigRational {
    crate::exactnum::parse_rational(s).expect("catalog constants are rationals")
}

fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Space on line `line` of the catalog with the given family parameters.
pub fn catalog_space(line: u32, params: LineParams) -> Result<GWSpace> {
    if !(1..=15).contains(&line) {
        return Err(Error::BadLine(line));
    }
    let bad = |msg: &str| Err(Error::BadParams(format!("line {line}: {msg}")));
    let (a, d) = match (line, &params) {
        (1..=3, &LineParams::Klm(k, l, m)) => {
            if k == 0 || l == 0 || m == 0 {
                return bad("k, l, m must be positive");
            }
            let (scale, denom) = match line {
                1 => (1, int(k + l + m) - int(2)),
                2 => (2, int(k + l + m)),
                _ => (4, int(k + l + m + 1)),
            };
            let two_n = int(2) * denom;
            let a = [int(m) / &two_n, int(l) / &two_n, int(k) / &two_n];
            let d = [int(scale * k * l), int(scale * k * m), int(scale * l * m)];
            (a, d)
        }
        (4, &LineParams::L(l)) => {
            if l < 2 {
                return bad("requires l >= 2");
            }
            let a = [int(l + 1) / int(4 * l), int(l - 1) / int(4 * l), q(1, 4)];
            let d = [int(l * (l - 1)), int(l * (l + 1)), int(l * l - 1)];
            (a, d)
        }
        (5, &LineParams::L(l)) => {
            if l < 4 {
                return bad("requires l >= 4");
            }
            let a12 = int(l - 2) / int(4 * (l - 1));
            let a = [a12.clone(), a12, int(1) / int(2 * (l - 1))];
            let d = [int(2 * (l - 1)), int(2 * (l - 1)), int((l - 1) * (l - 2))];
            (a, d)
        }
        (6..=15, LineParams::None) => {
            let row = &CATALOG[line as usize - 1];
            (row.a.map(parse_fixed), row.d.map(parse_fixed))
        }
        _ => return bad("parameters do not match the line"),
    };
    let [a1, a2, a3] = a;
    let params_a = AParams::with_boundary(a1, a2, a3)?;
    if params_a.is_boundary() && line != 1 {
        return bad("boundary point");
    }
    Ok(GWSpace {
        params: params_a,
        d,
        provenance: Provenance::Table1Line { line, params },
    })
}

/// An invariant metric `(x1, x2, x3)` with certified positive entries.
#[derive(Clone, PartialEq)]
pub struct MetricTriple {
    x: [Number; 3],
}

impl MetricTriple {
    pub fn new(x1: Number, x2: Number, x3: Number) -> Result<Self> {
        let x = [x1, x2, x3];
        if x.iter().any(|v| v.signum() != Some(1)) {
            return Err(Error::NonPositiveMetric);
        }
        Ok(MetricTriple { x })
    }

    pub fn from_rationals(x: [BigRational; 3]) -> Result<Self> {
        let [a, b, c] = x;
        Self::new(a.into(), b.into(), c.into())
    }

    pub fn from_ints(x: [i64; 3]) -> Result<Self> {
        Self::from_rationals(x.map(|v| BigRational::from_integer(v.into())))
    }

    pub fn from_quads(x: [QuadExt; 3]) -> Result<Self> {
        let [a, b, c] = x;
        Self::new(a.into(), b.into(), c.into())
    }

    pub fn components(&self) -> &[Number; 3] {
        &self.x
    }

    pub fn get(&self, i: usize) -> &Number {
        &self.x[i]
    }

    /// Exact rational entries, when all three are rational.
    pub fn as_rationals(&self) -> Option<[BigRational; 3]> {
        let r: Vec<_> = self.x.iter().map(|v| v.as_rational().cloned()).collect::<Option<_>>()?;
        Some([r[0].clone(), r[1].clone(), r[2].clone()])
    }

    /// Exact entries in a common quadratic field, when they exist.
    pub fn as_quads(&self) -> Option<[QuadExt; 3]> {
        let mut radicand: Option<BigInt> = None;
        let mut out = Vec::with_capacity(3);
        for v in &self.x {
            let e = match v {
                Number::Rational(r) => QuadExt::rational(r.clone()),
                Number::Quad(qx) => qx.clone(),
                Number::Enclosure(iv) if iv.is_point() => QuadExt::rational(iv.lo().clone()),
                Number::Enclosure(_) => return None,
            };
            if !e.is_rational() {
                match &radicand {
                    Some(d) if d != e.radicand() => return None,
                    _ => radicand = Some(e.radicand().clone()),
                }
            }
            out.push(e);
        }
        Some([out[0].clone(), out[1].clone(), out[2].clone()])
    }

    pub fn enclosures(&self, bits: u32) -> [Interval; 3] {
        [0, 1, 2].map(|i| self.x[i].to_interval(bits))
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [0, 1, 2].map(|i| self.x[i].to_f64())
    }

    pub fn permuted(&self, perm: [usize; 3]) -> MetricTriple {
        MetricTriple {
            x: perm.map(|i| self.x[i].clone()),
        }
    }
}

impl fmt::Debug for MetricTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x[0], self.x[1], self.x[2])
    }
}

const RATIO_BITS: u32 = 256;

enum Cmp {
    Same,
    Different,
    Unknown,
}

fn compare_ratio(a: &MetricTriple, b: &MetricTriple, tolerance: &BigRational) -> Cmp {
    if let (Some(x), Some(y)) = (a.as_quads(), b.as_quads()) {
        let compatible = [&x, &y]
            .iter()
            .flat_map(|t| t.iter())
            .filter(|v| !v.is_rational())
            .map(|v| v.radicand().clone())
            .collect::<std::collections::BTreeSet<_>>()
            .len()
            <= 1;
        if !compatible {
            // irrational ratios from different quadratic fields never agree
            // with each other, but rational ones still might
            return compare_intervals(a, b, tolerance);
        }
        let r = |t: &[QuadExt; 3], i: usize| t[i].clone() / t[2].clone();
        let same = (0..2).all(|i| r(&x, i) == r(&y, i));
        return if same { Cmp::Same } else { Cmp::Different };
    }
    compare_intervals(a, b, tolerance)
}

fn compare_intervals(a: &MetricTriple, b: &MetricTriple, tolerance: &BigRational) -> Cmp {
    let ea = a.enclosures(RATIO_BITS);
    let eb = b.enclosures(RATIO_BITS);
    let mut all_tight = true;
    for i in 0..2 {
        let ra = ea[i].checked_div(&ea[2]).expect("positive metric");
        let rb = eb[i].checked_div(&eb[2]).expect("positive metric");
        if !ra.overlaps(&rb) {
            return Cmp::Different;
        }
        if ra.width() > *tolerance || rb.width() > *tolerance {
            all_tight = false;
        }
    }
    if all_tight {
        Cmp::Same
    } else {
        Cmp::Unknown
    }
}

/// Whether two metrics are homothetic, under the same rules as
/// [`homothety_classes`].
pub fn homothetic(a: &MetricTriple, b: &MetricTriple, tolerance: &BigRational) -> Result<bool> {
    match compare_ratio(a, b, tolerance) {
        Cmp::Same => Ok(true),
        Cmp::Different => Ok(false),
        Cmp::Unknown => Err(Error::IndistinguishableAtTolerance),
    }
}

/// Partition metrics into homothety classes; each class lists input indices.
pub fn homothety_classes(
    metrics: &[MetricTriple],
    tolerance: &BigRational,
) -> Result<Vec<Vec<usize>>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'outer: for (i, m) in metrics.iter().enumerate() {
        for class in classes.iter_mut() {
            match compare_ratio(&metrics[class[0]], m, tolerance) {
                Cmp::Same => {
                    class.push(i);
                    continue 'outer;
                }
                Cmp::Different => {}
                Cmp::Unknown => return Err(Error::IndistinguishableAtTolerance),
            }
        }
        classes.push(vec![i]);
    }
    Ok(classes)
}
