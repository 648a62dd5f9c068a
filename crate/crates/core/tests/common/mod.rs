//! Independent reference formulas and generators shared by the integration
//! tests. Nothing here calls into the library's own kernels.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The two Einstein equations, written out term by term.
pub fn eq_direct(a: &[BigRational; 3], x: &[BigRational; 3]) -> [BigRational; 2] {
    let [a1, a2, a3] = a;
    let [x1, x2, x3] = x;
    let two = q(2, 1);
    [
        (a2 + a3) * (a1 * x2 * x2 + a1 * x3 * x3 - x2 * x3) + (a2 * x2 + a3 * x3) * x1
            - (a1 * a2 + a1 * a3 + &two * a2 * a3) * x1 * x1,
        (a1 + a3) * (a2 * x1 * x1 + a2 * x3 * x3 - x1 * x3) + (a1 * x1 + a3 * x3) * x2
            - (a1 * a2 + &two * a1 * a3 + a2 * a3) * x2 * x2,
    ]
}

/// Ricci components `1/(2 x_i) + (a_i/2)(x_i^2 - x_j^2 - x_k^2)/(x1 x2 x3)`.
pub fn ricci_direct(a: &[BigRational; 3], x: &[BigRational; 3]) -> [BigRational; 3] {
    let p = &x[0] * &x[1] * &x[2];
    let half = q(1, 2);
    let r = |i: usize, j: usize, k: usize| {
        BigRational::one() / (q(2, 1) * &x[i]) + &a[i] * &half * (&x[i] * &x[i] - &x[j] * &x[j] - &x[k] * &x[k]) / &p
    };
    [r(0, 1, 2), r(1, 0, 2), r(2, 0, 1)]
}

/// A rational strictly inside `(0, 1/2)`.
pub fn open_half() -> impl Strategy<Value = BigRational> {
    (3i64..400).prop_flat_map(|d| (1..=(d - 1) / 2, Just(d))).prop_map(|(n, d)| q(n, d))
}

pub fn a_triple() -> impl Strategy<Value = [BigRational; 3]> {
    [open_half(), open_half(), open_half()]
}

/// A positive rational in `(0, 4)`.
pub fn positive() -> impl Strategy<Value = BigRational> {
    (1i64..64, 1i64..17).prop_map(|(n, d)| q(n, d))
}

pub fn x_triple() -> impl Strategy<Value = [BigRational; 3]> {
    [positive(), positive(), positive()]
}

pub const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

pub fn permute<T: Clone>(v: &[T; 3], p: [usize; 3]) -> [T; 3] {
    [v[p[0]].clone(), v[p[1]].clone(), v[p[2]].clone()]
}
