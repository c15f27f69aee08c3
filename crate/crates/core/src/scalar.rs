//! Exact field scalars.
//!
//! Every computation in this crate needs exact equality (canonical forms are
//! compared structurally), so the scalar bound is an exact field rather than
//! `num_traits::Float`. The marker is implemented for the rational types from
//! `num-rational`; integer and floating point types are intentionally absent.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// An exact field: `+ - * /` never round, and `==` is mathematical equality.
pub trait Scalar:
    Num + Signed + FromPrimitive + Clone + Eq + Hash + Debug + Display + Send + Sync + 'static
{
    /// Embeds a small integer.
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every exact field contains the integers")
    }

    /// Builds `numer / denom`. Panics if `denom == 0`.
    fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_int(numer) / Self::from_int(denom)
    }

    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::one() / self.clone()
    }
}

impl Scalar for Ratio<BigInt> {}
impl Scalar for Ratio<i64> {}
impl Scalar for Ratio<i128> {}
