//! The coefficient interface shared by the Laurent layer and everything built
//! on it.
//!
//! Two rings implement it: [`RatFunc`], the field `ℚ(δ)`, and
//! [`DeltaSeries`], exact power series in δ truncated at a tracked order.

use std::fmt;

use crate::dseries::DeltaSeries;
use crate::error::Result;
use crate::exact::Rational;
use crate::ratfunc::RatFunc;

/// A commutative ℚ-algebra that can hold the coefficients of a regularized
/// Laurent expansion.
pub trait Coefficient: Clone + fmt::Debug + fmt::Display + PartialEq + Send + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(c: Rational) -> Self;

    /// True only for an exact zero.
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Rational) -> Self;

    /// The value as a plain rational, when it is exactly one.
    fn as_rational(&self) -> Option<Rational>;

    /// `(c + m·δ)^e`; rings that truncate keep `prec` orders in δ.
    fn affine_pow(c: &Rational, m: &Rational, e: i64, prec: i64) -> Result<Self>;
}

impl Coefficient for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }

    fn one() -> Self {
        RatFunc::one()
    }

    fn from_rational(c: Rational) -> Self {
        RatFunc::constant(c)
    }

    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn scale(&self, c: &Rational) -> Self {
        RatFunc::scale(self, c)
    }

    fn as_rational(&self) -> Option<Rational> {
        self.as_constant()
    }

    fn affine_pow(c: &Rational, m: &Rational, e: i64, _prec: i64) -> Result<Self> {
        RatFunc::affine(c.clone(), m.clone()).pow(e)
    }
}

impl Coefficient for DeltaSeries {
    fn zero() -> Self {
        DeltaSeries::zero()
    }

    fn one() -> Self {
        DeltaSeries::one()
    }

    fn from_rational(c: Rational) -> Self {
        DeltaSeries::constant(c)
    }

    fn is_zero(&self) -> bool {
        DeltaSeries::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        DeltaSeries::add(self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        DeltaSeries::add(self, &DeltaSeries::neg(rhs))
    }

    fn mul(&self, rhs: &Self) -> Self {
        DeltaSeries::mul(self, rhs)
    }

    fn neg(&self) -> Self {
        DeltaSeries::neg(self)
    }

    fn scale(&self, c: &Rational) -> Self {
        DeltaSeries::scale(self, c)
    }

    fn as_rational(&self) -> Option<Rational> {
        self.as_constant()
    }

    fn affine_pow(c: &Rational, m: &Rational, e: i64, prec: i64) -> Result<Self> {
        DeltaSeries::affine_pow(c, m, e, prec)
    }
}
