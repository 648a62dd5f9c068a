//! Sparse bivariate polynomials over the rationals and resultant elimination.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::UniPoly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// Map from exponent pair `(i, j)` of `x^i y^j` to its nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl BiPoly {
    pub fn var(v: Var) -> Self {
        let key = match v {
            Var::X => (1, 0),
            Var::Y => (0, 1),
        };
        let mut terms = BTreeMap::new();
        terms.insert(key, BigRational::one());
        BiPoly { terms }
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = BiPoly::default();
        p.add_term((0, 0), c);
        p
    }

    /// Univariate polynomial in `v` lifted to two variables.
    pub fn from_uni(p: &UniPoly, v: Var) -> Self {
        let mut out = BiPoly::default();
        for (k, c) in p.coeffs().iter().enumerate() {
            let key = match v {
                Var::X => (k as u32, 0),
                Var::Y => (0, k as u32),
            };
            out.add_term(key, c.clone());
        }
        out
    }

    fn add_term(&mut self, key: (u32, u32), c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| if v == Var::X { i } else { j })
            .max()
    }

    /// Coefficients with respect to `v`, ascending, each a polynomial in the
    /// other variable.
    pub fn coeffs_in(&self, v: Var) -> Vec<UniPoly> {
        let Some(deg) = self.degree_in(v) else {
            return Vec::new();
        };
        let mut raw = vec![BTreeMap::<u32, BigRational>::new(); deg as usize + 1];
        for (&(i, j), c) in &self.terms {
            let (k, other) = if v == Var::X { (i, j) } else { (j, i) };
            raw[k as usize].insert(other, c.clone());
        }
        raw.into_iter()
            .map(|m| {
                let top = m.keys().max().copied().unwrap_or(0) as usize;
                let mut cs = vec![BigRational::zero(); top + 1];
                for (e, c) in m {
                    cs[e as usize] = c;
                }
                UniPoly::new(cs)
            })
            .collect()
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * x.powu(i) * y.powu(j))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Fix `v = value`, leaving a polynomial in the other variable.
    pub fn specialize(&self, v: Var, value: &BigRational) -> UniPoly {
        let other = match v {
            Var::X => Var::Y,
            Var::Y => Var::X,
        };
        let mut acc = UniPoly::zero();
        for (k, c) in self.coeffs_in(other).into_iter().enumerate() {
            let mut cs = vec![BigRational::zero(); k + 1];
            cs[k] = c.eval(value);
            acc = acc + UniPoly::new(cs);
        }
        acc
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| format!("({c})*x^{i}*y^{j}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for BiPoly {
    type Output = BiPoly;
    fn add(mut self, rhs: BiPoly) -> BiPoly {
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
        self
    }
}

impl Sub for BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: BiPoly) -> BiPoly {
        self + (-rhs)
    }
}

impl Mul for BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: BiPoly) -> BiPoly {
        let mut out = BiPoly::default();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Zero for BiPoly {
    fn zero() -> Self {
        BiPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for BiPoly {
    fn one() -> Self {
        BiPoly::constant(BigRational::one())
    }
}

impl Scalar for BiPoly {
    fn from_rational(q: &BigRational) -> Self {
        BiPoly::constant(q.clone())
    }
}

/// Resultant of `p` and `q` with respect to `eliminate`, as a polynomial in
/// the remaining variable.
///
/// Sylvester determinant by fraction-free (Bareiss) elimination over
/// `Q[other]`.
pub fn resultant_eliminate(p: &BiPoly, q: &BiPoly, eliminate: Var) -> Result<UniPoly> {
    let dp = p.degree_in(eliminate).unwrap_or(0) as usize;
    let dq = q.degree_in(eliminate).unwrap_or(0) as usize;
    if dp == 0 && dq == 0 {
        return Err(Error::BothConstant);
    }
    if p.is_zero() || q.is_zero() {
        return Ok(UniPoly::zero());
    }
    let cp = p.coeffs_in(eliminate);
    let cq = q.coeffs_in(eliminate);
    let n = dp + dq;
    let mut m = vec![vec![UniPoly::zero(); n]; n];
    for r in 0..dq {
        for (k, c) in cp.iter().enumerate() {
            m[r][r + dp - k] = c.clone();
        }
    }
    for r in 0..dp {
        for (k, c) in cq.iter().enumerate() {
            m[dq + r][r + dq - k] = c.clone();
        }
    }
    Ok(bareiss_det(m))
}

fn bareiss_det(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    let mut prev = UniPoly::one();
    let mut negate = false;
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}
