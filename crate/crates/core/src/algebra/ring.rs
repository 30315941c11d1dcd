use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::Rat;
use crate::error::{Error, Result};

/// A commutative ring whose elements know their own context (variable set,
/// quadratic modulus), so that `zero_like`/`one_like` can produce
/// compatible constants without a separate ring object.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn rat_like(&self, r: &Rat) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, n: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }
}

pub trait IntegralDomain: Ring {
    const IS_FIELD: bool;

    /// Exact quotient `self / rhs`; fails when `rhs` does not divide `self`.
    fn div_exact(&self, rhs: &Self) -> Result<Self>;
}

pub trait Field: IntegralDomain {
    fn inv(&self) -> Result<Self>;

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * &rhs.inv()?)
    }
}

impl Ring for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn rat_like(&self, r: &Rat) -> Self {
        r.clone()
    }
}

impl IntegralDomain for Rat {
    const IS_FIELD: bool = true;
    fn div_exact(&self, rhs: &Self) -> Result<Self> {
        Field::div(self, rhs)
    }
}

impl Field for Rat {
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}
