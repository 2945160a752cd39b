use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::RieszError;

/// An exact rational number of arbitrary precision, always in lowest terms
/// with a positive denominator.
///
/// The textual form is `p/q`, or just `p` when the denominator is one.
/// Decimal notation is rejected on parse so that every scalar crossing an
/// interface is visibly exact.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numerator: i64, denominator: i64) -> Result<Self, RieszError> {
        if denominator == 0 {
            return Err(RieszError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(
            BigInt::from(numerator),
            BigInt::from(denominator),
        )))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse, or `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
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

impl FromStr for Rational {
    type Err = RieszError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        let bad = |reason: &str| RieszError::MalformedRational {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        if text.is_empty() {
            return Err(bad("empty string"));
        }
        if text.contains('.') || text.contains('e') || text.contains('E') {
            return Err(bad(
                "decimal notation is not accepted; write the value as a fraction p/q",
            ));
        }
        let parse_int = |part: &str| -> Result<BigInt, RieszError> {
            let part = part.trim();
            let digits = part.strip_prefix(['-', '+']).unwrap_or(part);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("expected an integer or p/q"));
            }
            part.parse::<BigInt>()
                .map_err(|_| bad("expected an integer or p/q"))
        };
        match text.split_once('/') {
            None => Ok(Rational(BigRational::from_integer(parse_int(text)?))),
            Some((p, q)) => {
                let numer = parse_int(p)?;
                let denom = parse_int(q)?;
                if denom.is_zero() {
                    return Err(bad("zero denominator"));
                }
                Ok(Rational(BigRational::new(numer, denom)))
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

// Division by zero panics, like the integer types. Callers that may see a
// zero divisor go through `recip`.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_and_normalizes() {
        assert_eq!(q("2/4"), Rational::new(1, 2).unwrap());
        assert_eq!(q("-3/-6").to_string(), "1/2");
        assert_eq!(q("6/-4").to_string(), "-3/2");
        assert_eq!(q("7").to_string(), "7");
        assert_eq!(q(" 1/4 ").to_string(), "1/4");
    }

    #[test]
    fn denominator_is_positive_and_reduced() {
        let r = q("10/-15");
        assert_eq!(r.denominator(), &BigInt::from(3));
        assert_eq!(r.numerator(), &BigInt::from(-2));
    }

    #[test]
    fn rejects_decimals_with_hint() {
        let err = "0.25".parse::<Rational>().unwrap_err();
        assert!(err.to_string().contains("p/q"), "{err}");
        assert!("1e3".parse::<Rational>().is_err());
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "/", "1/", "/2", "a/b", "1/0", "1//2", "--1", "1/2/3"] {
            assert!(bad.parse::<Rational>().is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn arithmetic_is_exact() {
        let third = q("1/3");
        let sum: Rational = [third.clone(), third.clone(), third.clone()].iter().sum();
        assert_eq!(sum, Rational::one());
        assert_eq!(&q("1/2") * &q("2/3"), third);
        assert_eq!(q("1/2") - q("1/2"), Rational::zero());
        assert_eq!(q("3/4") / q("3/2"), q("1/2"));
        assert_eq!(q("2/3").recip(), Some(q("3/2")));
        assert_eq!(Rational::zero().recip(), None);
    }
}
