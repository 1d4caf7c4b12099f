use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{forward_binops, Field, FieldTag, Ring};
use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    /// `num/den`; panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_bigs(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator(format!("{num}/{den}")));
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Parses `[+-]?digits(/digits)?`.
    pub fn parse(text: &str) -> Result<Self> {
        let malformed = || Error::MalformedNumber(text.to_string());
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (text, None),
        };
        let unsigned = num.strip_prefix(['+', '-']).unwrap_or(num);
        if unsigned.is_empty() || !unsigned.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let num = BigInt::from_str(num.strip_prefix('+').unwrap_or(num)).map_err(|_| malformed())?;
        let den = match den {
            Some(d) => {
                if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(malformed());
                }
                BigInt::from_str(d).map_err(|_| malformed())?
            }
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(Error::ZeroDenominator(text.to_string()));
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        assert!(!rhs.0.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

forward_binops!(Rational,
    Add::add => add_ref,
    Sub::sub => sub_ref,
    Mul::mul => mul_ref,
    Div::div => div_ref,
);

impl std::ops::Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl std::ops::Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn from_i64(n: i64) -> Self {
        n.into()
    }
}

impl Field for Rational {
    const TAG: FieldTag = FieldTag::Q;

    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Rational(self.0.recip()))
    }

    fn parse_scalar(text: &str) -> Result<Self> {
        Rational::parse(text.trim())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_reduces() {
        assert_eq!(Rational::parse("3/6").unwrap(), Rational::new(1, 2));
        assert_eq!(Rational::parse("-4/2").unwrap(), Rational::new(-2, 1));
        let zero = Rational::parse("0/7").unwrap();
        assert_eq!(zero, Rational::zero());
        assert_eq!(zero.denom(), &BigInt::one());
        assert_eq!(Rational::parse("+5").unwrap(), Rational::from(5));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Rational::parse("1/0"), Err(Error::ZeroDenominator(_))));
        for bad in ["", "-", "1/", "/2", "1.5", "1/-2", "a", "1/2/3", " 1"] {
            assert!(
                matches!(Rational::parse(bad), Err(Error::MalformedNumber(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "-3", "7/9", "-1/2"] {
            assert_eq!(Rational::parse(s).unwrap().to_string(), s);
        }
        let big = "123456789012345678901234567891/7";
        assert_eq!(Rational::parse(big).unwrap().to_string(), big);
    }

    #[test]
    fn inverse_of_zero_is_none() {
        assert!(Rational::zero().inv().is_none());
        assert_eq!(Rational::new(-2, 3).inv().unwrap(), Rational::new(-3, 2));
    }
}
