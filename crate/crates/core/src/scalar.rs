//! Scalar abstraction for the numeric modules.
//!
//! Vectorisation, SVM training and scoring only need the operations of a
//! real field plus a handful of transcendental functions, so they are written
//! against [`Scalar`] and work for `f32` and `f64`. Contingency metrics are
//! written against [`MetricScalar`], which is also satisfied by exact
//! rationals.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, Num};

pub trait Scalar: Float + FromPrimitive + Debug + Display + FromStr + Default + Sum + Send + Sync + 'static {
    fn from_f64_lossy(v: f64) -> Self {
        Self::from_f64(v).unwrap_or_else(Self::nan)
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).unwrap_or_else(Self::infinity)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Anything precision, recall and F can be expressed in.
pub trait MetricScalar: Num + Copy + PartialOrd + Debug {
    fn from_count(n: u64) -> Self;
}

impl MetricScalar for f32 {
    fn from_count(n: u64) -> Self {
        n as f32
    }
}

impl MetricScalar for f64 {
    fn from_count(n: u64) -> Self {
        n as f64
    }
}

impl MetricScalar for crate::Rational {
    fn from_count(n: u64) -> Self {
        crate::Rational::from_integer(n as i64)
    }
}
