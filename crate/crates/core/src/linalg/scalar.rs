use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact rational number, always kept in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseScalarError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`; panics if `den == 0`.
    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs_numer(&self) -> BigInt {
        self.0.numer().abs()
    }

    pub fn recip(&self) -> Self {
        Scalar(self.0.recip())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar(r)
    }
}

/// Canonical text form: `p/q`, or `p` when `q = 1`; the sign sits on `p`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Accepts `p`, `p/q`, with an optional leading `-` (or U+2212) on `p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() {
            return Err(ParseScalarError::Empty);
        }
        let (neg, body) = if let Some(rest) = t.strip_prefix('-') {
            (true, rest)
        } else if let Some(rest) = t.strip_prefix('\u{2212}') {
            (true, rest)
        } else {
            (false, t)
        };
        let bad = || ParseScalarError::Malformed(s.to_string());
        let digits = |x: &str| -> Result<BigInt, ParseScalarError> {
            if x.is_empty() || !x.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            x.parse::<BigInt>().map_err(|_| bad())
        };
        let (num, den) = match body.split_once('/') {
            Some((p, q)) => (digits(p)?, digits(q)?),
            None => (digits(body)?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(ParseScalarError::ZeroDenominator(s.to_string()));
        }
        let num = if neg { -num } else { num };
        Ok(Scalar(BigRational::new(num, den)))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if !rhs.is_zero() {
            self.0 += &rhs.0;
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        if !rhs.is_zero() {
            self.0 += rhs.0;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if !rhs.is_zero() {
            self.0 -= &rhs.0;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(Scalar::from_frac(6, -4).to_string(), "-3/2");
        assert_eq!(Scalar::from_frac(4, 2).to_string(), "2");
        assert_eq!(Scalar::from_frac(-0, 5).to_string(), "0");
    }

    #[test]
    fn parses_forms() {
        assert_eq!("3".parse::<Scalar>().unwrap(), Scalar::from_int(3));
        assert_eq!("-3/6".parse::<Scalar>().unwrap(), Scalar::from_frac(-1, 2));
        assert_eq!("\u{2212}1/3".parse::<Scalar>().unwrap(), Scalar::from_frac(-1, 3));
        assert!(matches!(
            "1/0".parse::<Scalar>(),
            Err(ParseScalarError::ZeroDenominator(_))
        ));
        assert!(matches!("".parse::<Scalar>(), Err(ParseScalarError::Empty)));
        assert!("1/-2".parse::<Scalar>().is_err());
        assert!("1.5".parse::<Scalar>().is_err());
        assert!("--1".parse::<Scalar>().is_err());
    }

    #[test]
    fn arithmetic_is_exact() {
        let third = Scalar::from_frac(1, 3);
        let sum = &(&third + &third) + &third;
        assert!(sum.is_one());
        assert_eq!(Scalar::from_int(-2).pow(3), Scalar::from_int(-8));
        assert_eq!(Scalar::from_frac(2, 3).recip(), Scalar::from_frac(3, 2));
    }
}
