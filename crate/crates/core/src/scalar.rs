//! Scalar abstractions shared by the exact and floating-point layers.
//!
//! Exact work (power series, exponents, Dirichlet coefficients) is generic over
//! [`Coefficient`]; numeric work (zeta, Euler products, residues) is generic
//! over [`Real`].

use std::fmt::{Debug, Display, LowerExp};

use num_bigint::BigInt;
use num_traits::{
    CheckedAdd, CheckedMul, CheckedSub, FloatConst, FromPrimitive, Signed, ToPrimitive,
};

/// Floating point scalar used by the analytic layer: `f32` or `f64`.
pub trait Real:
    num_traits::Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from `f64`, used for constants.
    fn c(v: f64) -> Self {
        Self::from_f64(v).expect("f64 constant representable")
    }

    /// Machine epsilon as a plain number.
    fn eps() -> Self {
        <Self as num_traits::Float>::epsilon()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Exact signed integer used for power-series and Dirichlet coefficients.
///
/// Fixed-width types report overflow through the checked operations; `BigInt`
/// never overflows.
pub trait Coefficient:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + std::hash::Hash
    + Signed
    + FromPrimitive
    + ToPrimitive
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Send
    + Sync
    + 'static
{
    fn of(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("i64 fits every coefficient type")
    }

    fn to_big(&self) -> BigInt {
        self.to_string().parse().expect("integer display parses")
    }
}

impl Coefficient for i64 {}
impl Coefficient for i128 {}
impl Coefficient for BigInt {}
