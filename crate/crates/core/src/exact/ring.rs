//! Coefficient-ring abstraction shared by polynomials and plane forms.
//!
//! Constructors take `&self` so that rings whose elements carry context
//! (quotient rings carry their modulus) can produce matching constants.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ExactRational;

pub trait Ring: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn mul_int(&self, n: i64) -> Self {
        self.mul(&self.int_like(n))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Rings whose constants need no context.
pub trait Unital: Ring {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
}

pub trait Field: Ring {
    /// Multiplicative inverse, `None` for zero (or a zero divisor).
    fn try_inv(&self) -> Option<Self>;

    fn try_div(&self, other: &Self) -> Option<Self> {
        other.try_inv().map(|inv| self.mul(&inv))
    }
}

impl Ring for ExactRational {
    fn zero_like(&self) -> Self {
        Zero::zero()
    }
    fn one_like(&self) -> Self {
        One::one()
    }
    fn int_like(&self, n: i64) -> Self {
        ExactRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul_int(&self, n: i64) -> Self {
        self * BigInt::from(n)
    }
}

impl Unital for ExactRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_int(n: i64) -> Self {
        ExactRational::from_integer(BigInt::from(n))
    }
}

impl Field for ExactRational {
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        Zero::zero()
    }
    fn one_like(&self) -> Self {
        One::one()
    }
    fn int_like(&self, n: i64) -> Self {
        BigInt::from(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Unital for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_int(n: i64) -> Self {
        BigInt::from(n)
    }
}
