//! Scalar traits shared by the generic algebra layer.
//!
//! Everything in this crate is exact: ranks, kernels and vanishing orders are
//! decided by comparing with zero, so only exact rings are admitted. The
//! polynomial, matrix and series containers are generic over [`Scalar`];
//! operations that divide require [`Field`].

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, Zero};

/// A commutative ring element with exact equality.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + FromPrimitive {}

impl<T> Scalar for T where T: Clone + Debug + PartialEq + Num + Neg<Output = T> + FromPrimitive {}

/// A scalar type in which every nonzero element is invertible and `/` is exact.
pub trait Field: Scalar {}

impl<T> Field for Ratio<T> where
    T: Clone + Debug + Integer + Signed,
    Ratio<T>: FromPrimitive,
{
}

/// Exact division in an integral domain: `a.div_exact(b)` assumes `b | a`.
///
/// Used by fraction-free elimination, where every intermediate division is
/// known to be exact.
pub trait ExactDiv: Scalar {
    fn div_exact(&self, rhs: &Self) -> Self;

    /// Quotient if `rhs` divides `self`, else `None`.
    fn try_div(&self, rhs: &Self) -> Option<Self>;
}

impl ExactDiv for BigInt {
    fn div_exact(&self, rhs: &Self) -> Self {
        let (q, r) = self.div_rem(rhs);
        debug_assert!(r.is_zero(), "inexact integer division");
        q
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }
}

impl ExactDiv for i64 {
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert!(self % rhs == 0, "inexact integer division");
        self / rhs
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        (self % rhs == 0).then(|| self / rhs)
    }
}

impl<T> ExactDiv for Ratio<T>
where
    T: Clone + Debug + Integer + Signed,
    Ratio<T>: FromPrimitive,
{
    fn div_exact(&self, rhs: &Self) -> Self {
        self.clone() / rhs.clone()
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self.clone() / rhs.clone())
    }
}
