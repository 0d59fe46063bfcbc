//! Exact rational values.
//!
//! Every arithmetic function in this crate is rational-valued, and every
//! identity is checked by exact equality. [`Value`] is a thin newtype over
//! [`BigRational`] that fixes the textual form: integers print bare, other
//! values print as a reduced `a/b` with the sign on the numerator.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Value(BigRational);

impl Value {
    pub fn zero() -> Self {
        Value(BigRational::zero())
    }

    pub fn one() -> Self {
        Value(BigRational::one())
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Value(BigRational::from_integer(n.into()))
    }

    /// `num / den`, reduced. Panics if `den` is zero.
    pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Value(BigRational::new(num.into(), den.into()))
    }

    pub fn from_biguint(n: &BigUint) -> Self {
        Value::from_int(BigInt::from(n.clone()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn pow(&self, exp: u32) -> Value {
        Value(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Multiplicative inverse, or `None` for zero.
    pub fn recip(&self) -> Option<Value> {
        if self.is_zero() {
            None
        } else {
            Some(Value(self.0.recip()))
        }
    }

    /// `(numerator, denominator)` if both fit in machine words.
    pub fn to_i64_pair(&self) -> Option<(i64, u64)> {
        Some((self.numer().to_i64()?, self.denom().to_u64()?))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_rational(self) -> BigRational {
        self.0
    }
}

impl From<BigRational> for Value {
    fn from(r: BigRational) -> Self {
        Value(r)
    }
}

macro_rules! from_ints {
    ($($t:ty),*) => {$(
        impl From<$t> for Value {
            fn from(n: $t) -> Self {
                Value::from_int(n)
            }
        }
    )*};
}
from_ints!(i32, i64, u32, u64, usize, BigInt);

impl From<BigUint> for Value {
    fn from(n: BigUint) -> Self {
        Value::from_int(BigInt::from(n))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Value {
    type Err = Error;

    /// Accepts `a` or `a/b`; the result is reduced, so `"4/6"` parses to `2/3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            None => s.parse::<BigInt>().map(Value::from_int).map_err(|_| bad()),
            Some((num, den)) => {
                let num: BigInt = num.parse().map_err(|_| bad())?;
                let den: BigInt = den.parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Value::ratio(num, den))
            }
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Value {
            type Output = Value;
            fn $method(self, rhs: Value) -> Value {
                Value(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Value> for Value {
            type Output = Value;
            fn $method(self, rhs: &'a Value) -> Value {
                Value(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $tr<&'a Value> for &'a Value {
            type Output = Value;
            fn $method(self, rhs: &'a Value) -> Value {
                Value((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $tr<Value> for &'a Value {
            type Output = Value;
            fn $method(self, rhs: Value) -> Value {
                Value((&self.0).$method(rhs.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl AddAssign for Value {
    fn add_assign(&mut self, rhs: Value) {
        self.0 += rhs.0;
    }
}

impl<'a> AddAssign<&'a Value> for Value {
    fn add_assign(&mut self, rhs: &'a Value) {
        self.0 += &rhs.0;
    }
}

impl SubAssign for Value {
    fn sub_assign(&mut self, rhs: Value) {
        self.0 -= rhs.0;
    }
}

impl MulAssign for Value {
    fn mul_assign(&mut self, rhs: Value) {
        self.0 *= rhs.0;
    }
}

impl<'a> MulAssign<&'a Value> for Value {
    fn mul_assign(&mut self, rhs: &'a Value) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Value {
    type Output = Value;
    fn neg(self) -> Value {
        Value(-self.0)
    }
}

impl Neg for &Value {
    type Output = Value;
    fn neg(self) -> Value {
        Value(-&self.0)
    }
}

impl Sum for Value {
    fn sum<I: Iterator<Item = Value>>(iter: I) -> Value {
        iter.fold(Value::zero(), |acc, v| acc + v)
    }
}

impl<'a> Sum<&'a Value> for Value {
    fn sum<I: Iterator<Item = &'a Value>>(iter: I) -> Value {
        iter.fold(Value::zero(), |acc, v| acc + v)
    }
}

impl Product for Value {
    fn product<I: Iterator<Item = Value>>(iter: I) -> Value {
        iter.fold(Value::one(), |acc, v| acc * v)
    }
}
