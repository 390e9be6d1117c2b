//! Commutative rings in which degree computations are carried out.
//!
//! The same elimination code runs over the rational function field K
//! (exact symbolic answers), over k itself (random evaluation), and over
//! truncated Laurent series k((t)) (valuations along a curve). A [`Domain`] is
//! a context object in the style of "ring as a value": elements are plain data
//! and all arithmetic goes through the domain.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::poly::RatFunc;

/// Outcome of asking whether an element is zero. Only inexact domains answer
/// [`ZeroTest::Unknown`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroTest {
    Zero,
    NonZero,
    Unknown,
}

pub trait Domain: Sync {
    type Elem: Clone + Send + Sync + fmt::Debug;

    fn field(&self) -> Field;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_scalar(&self, s: &Scalar) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn zero_test(&self, a: &Self::Elem) -> ZeroTest;

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_scalar(&self.field().from_i64(v))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn scale(&self, a: &Self::Elem, s: &Scalar) -> Self::Elem {
        self.mul(a, &self.from_scalar(s))
    }

    /// Pivot preference for elimination; smaller is better.
    fn size_hint(&self, _a: &Self::Elem) -> i64 {
        0
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.zero_test(a) == ZeroTest::Zero
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }
}

/// k itself: elements are scalars.
#[derive(Clone, Copy, Debug)]
pub struct Numeric(pub Field);

impl Domain for Numeric {
    type Elem = Scalar;

    fn field(&self) -> Field {
        self.0
    }
    fn zero(&self) -> Scalar {
        self.0.zero()
    }
    fn one(&self) -> Scalar {
        self.0.one()
    }
    fn from_scalar(&self, s: &Scalar) -> Scalar {
        s.clone()
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.0.add(a, b)
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        self.0.neg(a)
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.0.sub(a, b)
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.0.mul(a, b)
    }
    fn inv(&self, a: &Scalar) -> Result<Scalar> {
        self.0.inv(a).ok_or(Error::DivisionByZero)
    }
    fn zero_test(&self, a: &Scalar) -> ZeroTest {
        if self.0.is_zero(a) {
            ZeroTest::Zero
        } else {
            ZeroTest::NonZero
        }
    }
    fn pow(&self, a: &Scalar, e: u32) -> Scalar {
        self.0.pow(a, e as u64)
    }
}

/// The rational function field K = k(a_{i,j}).
#[derive(Clone, Copy, Debug)]
pub struct Symbolic(pub Field);

impl Domain for Symbolic {
    type Elem = RatFunc;

    fn field(&self) -> Field {
        self.0
    }
    fn zero(&self) -> RatFunc {
        RatFunc::zero(self.0)
    }
    fn one(&self) -> RatFunc {
        RatFunc::one(self.0)
    }
    fn from_scalar(&self, s: &Scalar) -> RatFunc {
        RatFunc::constant(self.0, s.clone())
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.add(b)
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        a.neg()
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.sub(b)
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.mul(b)
    }
    fn inv(&self, a: &RatFunc) -> Result<RatFunc> {
        a.inv()
    }
    fn scale(&self, a: &RatFunc, s: &Scalar) -> RatFunc {
        a.scale(s)
    }
    fn zero_test(&self, a: &RatFunc) -> ZeroTest {
        if a.is_zero() {
            ZeroTest::Zero
        } else {
            ZeroTest::NonZero
        }
    }
}
