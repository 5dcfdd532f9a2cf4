//! The interface Hecke-algebra elements need from their coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::Result;
use crate::laurent::LaurentPoly;
use crate::modp::PrimeField;

pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + From<LaurentPoly>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
{
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    /// Product with an integral Laurent polynomial.
    fn scale(&self, p: &LaurentPoly) -> Self;
    /// Value at `v = a` in `F_p`.
    fn specialize(&self, a: u64, field: &PrimeField) -> Result<u64>;
}

impl Coefficient for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }

    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }

    fn scale(&self, p: &LaurentPoly) -> Self {
        self * p
    }

    fn specialize(&self, a: u64, field: &PrimeField) -> Result<u64> {
        LaurentPoly::specialize(self, a, field)
    }
}

/// `1 + u`.
pub fn one_plus_u() -> LaurentPoly {
    LaurentPoly::from_u_terms([(0, 1), (1, 1)])
}
