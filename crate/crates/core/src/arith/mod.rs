//! Exact scalars: rationals, polynomials over the rationals, and rational
//! functions in one variable `t`.
//!
//! Everything downstream is generic over [`Ring`] (matrices, chain complexes)
//! or [`Field`] (elimination, homology, torsion). There is no floating point
//! anywhere in the crate.

mod expr;
mod poly;
mod ratfun;
mod rational;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub use poly::Polynomial;
pub use ratfun::RationalFunction;
pub use rational::Rational;

/// Which field a whole computation lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    #[serde(rename = "Q")]
    Q,
    #[serde(rename = "Q(t)")]
    Qt,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Q => f.write_str("Q"),
            FieldTag::Qt => f.write_str("Q(t)"),
        }
    }
}

/// Commutative ring with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

pub trait Field: Ring + Div<Output = Self> + for<'a> Div<&'a Self, Output = Self> {
    const TAG: FieldTag;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Parses the textual scalar syntax of this field.
    fn parse_scalar(text: &str) -> Result<Self>;

    /// Integer power; negative exponents invert. Panics on `0^(-k)`.
    fn powi(&self, exp: i64) -> Self {
        let base = if exp < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.clone() * &sq;
            }
        }
        acc
    }

    /// `self^((-1)^(k+1))`: the alternating exponent used throughout torsion.
    fn alternate(&self, k: usize) -> Self {
        if k.is_multiple_of(2) {
            self.inv().expect("alternating power of zero")
        } else {
            self.clone()
        }
    }
}

/// Implements the by-value/by-reference operator matrix on top of four
/// reference-reference primitives.
macro_rules! forward_binops {
    ($ty:ty, $($tr:ident :: $method:ident => $prim:ident),+ $(,)?) => {
        $(
            impl std::ops::$tr<$ty> for $ty {
                type Output = $ty;
                fn $method(self, rhs: $ty) -> $ty { <$ty>::$prim(&self, &rhs) }
            }
            impl<'a> std::ops::$tr<&'a $ty> for $ty {
                type Output = $ty;
                fn $method(self, rhs: &'a $ty) -> $ty { <$ty>::$prim(&self, rhs) }
            }
            impl<'a> std::ops::$tr<$ty> for &'a $ty {
                type Output = $ty;
                fn $method(self, rhs: $ty) -> $ty { <$ty>::$prim(self, &rhs) }
            }
            impl<'a, 'b> std::ops::$tr<&'b $ty> for &'a $ty {
                type Output = $ty;
                fn $method(self, rhs: &'b $ty) -> $ty { <$ty>::$prim(self, rhs) }
            }
        )+
    };
}
pub(crate) use forward_binops;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powi_and_alternate() {
        let two = Rational::from_i64(2);
        assert_eq!(two.powi(10), Rational::from_i64(1024));
        assert_eq!(two.powi(-2), Rational::new(1, 4));
        assert_eq!(two.powi(0), Rational::one());
        assert_eq!(two.alternate(0), Rational::new(1, 2));
        assert_eq!(two.alternate(1), two);
    }
}
