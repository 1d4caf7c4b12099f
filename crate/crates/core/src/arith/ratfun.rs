use std::fmt;

use super::{expr, forward_binops, Field, FieldTag, Polynomial, Rational, Ring};
use crate::error::{Error, Result};

/// Element of Q(t) in canonical form: coprime numerator and monic
/// denominator. Two equal functions are equal field-by-field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g);
        let den = den.exact_div(&g);
        let lc = den.leading().expect("nonzero denominator").clone();
        let lc_inv = lc.inv().expect("nonzero leading coefficient");
        Ok(RationalFunction {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn t() -> Self {
        Self::from_poly(Polynomial::t())
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The numerator, if this is a polynomial.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    /// `Some(c)` when the function is a nonzero-or-zero rational constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    fn build(num: Polynomial, den: Polynomial) -> Self {
        Self::new(num, den).expect("nonzero denominator")
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::build(&self.num + &rhs.num, self.den.clone());
        }
        Self::build(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::build(&self.num - &rhs.num, self.den.clone());
        }
        Self::build(&self.num * &rhs.den - &rhs.num * &self.den, &self.den * &rhs.den)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel first to keep the gcd small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = self.num.exact_div(&g1) * rhs.num.exact_div(&g2);
        let den = self.den.exact_div(&g2) * rhs.den.exact_div(&g1);
        Self::build(num, den)
    }

    fn div_ref(&self, rhs: &Self) -> Self {
        self.mul_ref(&rhs.inv().expect("division by zero"))
    }
}

forward_binops!(RationalFunction,
    Add::add => add_ref,
    Sub::sub => sub_ref,
    Mul::mul => mul_ref,
    Div::div => div_ref,
);

impl std::ops::Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Ring for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }
    fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_i64(n: i64) -> Self {
        Self::from_poly(Polynomial::from_i64(n))
    }
}

impl Field for RationalFunction {
    const TAG: FieldTag = FieldTag::Qt;

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let lc = self.num.leading().expect("nonzero numerator").inv()?;
        Some(RationalFunction {
            num: self.den.scale(&lc),
            den: self.num.scale(&lc),
        })
    }

    fn parse_scalar(text: &str) -> Result<Self> {
        expr::parse_ratfun(text)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        Self::from_rational(c)
    }
}

fn needs_parens(p: &Polynomial) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 || p.leading().is_some_and(|c| !c.is_integer())
}

/// `num` or `num/den`, parenthesizing multi-term parts: `(t+1)/(t^2-2)`.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if needs_parens(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if needs_parens(&self.den) || self.den.degree() == Some(0) {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}
