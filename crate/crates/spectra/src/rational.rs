use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::SpectraError;

/// Exact rational number, printed as `a/b` with `b > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self, SpectraError> {
        if den == 0 {
            return Err(SpectraError::ZeroDenominator);
        }
        Ok(Rational(Ratio::new(num, den)))
    }

    pub fn integer(n: i64) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn zero() -> Self {
        Rational(Ratio::zero())
    }

    pub fn one() -> Self {
        Rational::integer(1)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    /// Fractional part in `[0, 1)`.
    pub fn fract(&self) -> Self {
        let (n, d) = (self.numer(), self.denom());
        Rational(Ratio::new(n.mod_floor(&d), d))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Rational(self.0 * k)
    }

    pub fn midpoint(&self, other: Rational) -> Rational {
        Rational((self.0 + other.0) / 2)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// True when `0 < self < 1`.
    pub fn in_open_unit(&self) -> bool {
        self.numer() > 0 && self.numer() < self.denom()
    }
}

impl std::ops::Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Rational {
    type Err = SpectraError;

    /// Accepts `a/b` or a bare integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SpectraError::BadRational(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((a, b)) => {
                let a: i64 = a.trim().parse().map_err(|_| bad())?;
                let b: i64 = b.trim().parse().map_err(|_| bad())?;
                Rational::new(a, b)
            }
            None => Ok(Rational::integer(s.parse().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
