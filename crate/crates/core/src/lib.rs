//! Generalized Wallach spaces: the region polynomial, invariant Einstein
//! metrics, the normalized Ricci flow and the SO(k+l+m) census.

pub mod census;
pub mod einstein;
pub mod error;
pub mod exactnum;
pub mod flow;
pub mod hifloat;
pub mod omega;
pub mod scalar;
pub mod wallach;

pub use error::{Error, Result};
pub use exactnum::{Interval, Number, QuadExt, UniPoly};
pub use hifloat::HiFloat;
pub use scalar::{FieldScalar, Real, Scalar};

pub type Rational = num_rational::BigRational;

/// Flow kernel in double precision, used for trajectories and portraits.
pub type FlowF64 = flow::Coeffs<f64>;
/// Flow kernel at high precision, used for linearization.
pub type FlowHp = flow::Coeffs<HiFloat>;
pub type JacobianHp = [[HiFloat; 2]; 2];
