//! Coefficient rings: exact rationals, sparse multivariate polynomials over a
//! symbol registry, and arbitrary-precision complex numbers.

mod complex;
mod mpoly;
mod rational;
mod symbol;

pub use complex::{ComplexVal, DEFAULT_PRECISION};
pub use mpoly::{Monomial, MPoly};
pub use rational::{parse_rational, rat, Rational};
pub use symbol::{Registry, Symbol, SymbolId, SymbolKind};

use crate::error::Result;
use std::fmt;

/// A commutative ring with a `ℚ`-action.
///
/// Method names avoid clashing with `std::ops` so that types may implement
/// both.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, q: &Rational) -> Self;
    fn try_inverse(&self) -> Result<Self>;

    fn from_rational(q: &Rational) -> Self {
        Self::one().scaled(q)
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn is_one(&self) -> bool {
        self.minus(&Self::one()).is_zero()
    }

    fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.times(self);
        }
        acc
    }
}
