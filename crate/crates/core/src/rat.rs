//! Arbitrary-precision rationals, the scalar type of every exact decision in
//! this crate.
//!
//! A [`Rat`] is always stored in lowest terms with a positive denominator and
//! serializes as the string `"p/q"` (the zero value is `"0/1"`). No floating
//! point is involved anywhere: diagnostics may render decimal approximations,
//! decisions never use them.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational number in canonical form (lowest terms, denominator > 0).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let d = denom.into();
        assert!(!d.is_zero(), "rational with zero denominator");
        Rat(BigRational::new(numer.into(), d))
    }

    pub fn int(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    /// 2^-k, the dyadic refinement unit used for default enclosure widths.
    pub fn pow2_neg(k: u32) -> Self {
        Rat(BigRational::new(BigInt::one(), BigInt::one() << k))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn signum(&self) -> i32 {
        match self.0.cmp(&BigRational::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    /// Midpoint of two rationals, the bisection step of every enclosure loop.
    pub fn midpoint(a: &Rat, b: &Rat) -> Rat {
        Rat((&a.0 + &b.0) / BigRational::from_integer(BigInt::from(2)))
    }

    /// Exact square root if the value is the square of a rational.
    pub fn exact_sqrt(&self) -> Option<Rat> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rat(BigRational::new(n, d)))
        } else {
            None
        }
    }

    /// Decimal rendering for human-readable tables; never used in decisions.
    pub fn to_f64_lossy(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error produced when a string is not a valid `"p/q"` rational.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational {input:?}: {reason}")]
pub struct ParseRatError {
    pub input: String,
    pub reason: String,
}

impl FromStr for Rat {
    type Err = ParseRatError;

    /// Accepts `"p/q"` (canonical form) and bare integers `"p"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| ParseRatError {
            input: s.to_owned(),
            reason: reason.to_owned(),
        };
        let s = s.trim();
        let (num_s, den_s) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let numer: BigInt = num_s.trim().parse().map_err(|_| err("bad numerator"))?;
        let denom: BigInt = match den_s {
            Some(d) => d.trim().parse().map_err(|_| err("bad denominator"))?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(err("zero denominator"));
        }
        Ok(Rat(BigRational::new(numer, denom)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(&self.0 $op &rhs.0)
            }
        }
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0 $op rhs.0)
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(self.0 $op &rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rat(&self.0 / &rhs.0)
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        (&self).div(&rhs)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

/// Shorthand for small rational literals in tests and gallery constructions.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(rat(2, 4).to_string(), "1/2");
        assert_eq!(rat(1, -2).to_string(), "-1/2");
        assert_eq!(rat(0, 5).to_string(), "0/1");
        assert_eq!(Rat::int(7).to_string(), "7/1");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0/1", "-3/7", "22/7", "5/1"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!(" 4 / 6 ".parse::<Rat>().unwrap(), rat(2, 3));
        assert_eq!("-9".parse::<Rat>().unwrap(), Rat::int(-9));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("a/2".parse::<Rat>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = rat(1, 2);
        let b = rat(1, 3);
        assert_eq!(&a + &b, rat(5, 6));
        assert_eq!(&a - &b, rat(1, 6));
        assert_eq!(&a * &b, rat(1, 6));
        assert_eq!(&a / &b, rat(3, 2));
        assert_eq!(-&a, rat(-1, 2));
        assert_eq!(Rat::midpoint(&Rat::zero(), &Rat::one()), rat(1, 2));
    }

    #[test]
    fn exact_sqrt() {
        assert_eq!(rat(9, 4).exact_sqrt(), Some(rat(3, 2)));
        assert_eq!(rat(1, 2).exact_sqrt(), None);
        assert_eq!(rat(-1, 4).exact_sqrt(), None);
        assert_eq!(Rat::zero().exact_sqrt(), Some(Rat::zero()));
    }

    #[test]
    fn dyadic_unit() {
        assert_eq!(Rat::pow2_neg(3), rat(1, 8));
    }

    #[test]
    fn serde_as_string() {
        let r = rat(-5, 8);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, "\"-5/8\"");
        let back: Rat = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
