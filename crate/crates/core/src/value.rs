//! Orders of vanishing and type values, both with a first-class infinity.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

/// Order of vanishing: a nonnegative integer, or infinity for the zero germ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u32),
    Infinity,
}

impl Order {
    pub fn is_finite(&self) -> bool {
        matches!(self, Order::Finite(_))
    }

    pub fn finite(&self) -> Option<u32> {
        match self {
            Order::Finite(v) => Some(*v),
            Order::Infinity => None,
        }
    }


    pub fn scale(self, k: u32) -> Order {
        match self {
            Order::Finite(a) => Order::Finite(a * k),
            Order::Infinity => Order::Infinity,
        }
    }

    /// `self / denom` as a type value; infinity stays infinity.
    pub fn ratio(self, denom: u32) -> TypeValue {
        assert!(denom > 0, "ratio with zero denominator");
        match self {
            Order::Finite(a) => TypeValue::Finite(BigRational::new(BigInt::from(a), BigInt::from(denom))),
            Order::Infinity => TypeValue::Infinity,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(v) => write!(f, "{v}"),
            Order::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Order::Finite(v) => s.serialize_u32(*v),
            Order::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Order {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u32),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(v) => Ok(Order::Finite(v)),
            Raw::S(s) if s == "inf" => Ok(Order::Infinity),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad order {s:?}"))),
        }
    }
}

/// A type value: nonnegative rational or infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TypeValue {
    Finite(BigRational),
    Infinity,
}

impl TypeValue {
    pub fn int(v: i64) -> Self {
        TypeValue::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, TypeValue::Finite(_))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            TypeValue::Finite(v) => Some(v),
            TypeValue::Infinity => None,
        }
    }

    pub fn scale(&self, k: &BigRational) -> TypeValue {
        match self {
            TypeValue::Finite(v) => TypeValue::Finite(v * k),
            TypeValue::Infinity => TypeValue::Infinity,
        }
    }

    pub fn parse(s: &str) -> Result<Self, String> {
        if s.trim() == "inf" {
            Ok(TypeValue::Infinity)
        } else {
            crate::serde_util::parse_ratio(s).map(TypeValue::Finite)
        }
    }
}

impl Ord for TypeValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (TypeValue::Finite(a), TypeValue::Finite(b)) => a.cmp(b),
            (TypeValue::Finite(_), TypeValue::Infinity) => Ordering::Less,
            (TypeValue::Infinity, TypeValue::Finite(_)) => Ordering::Greater,
            (TypeValue::Infinity, TypeValue::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for TypeValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TypeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeValue::Finite(v) => write!(f, "{}", crate::serde_util::ratio_string(v)),
            TypeValue::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for TypeValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TypeValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        TypeValue::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Valuation of a product: orders add.
impl std::ops::Add for Order {
    type Output = Order;
    fn add(self, other: Order) -> Order {
        match (self, other) {
            (Order::Finite(a), Order::Finite(b)) => Order::Finite(a + b),
            _ => Order::Infinity,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_arithmetic() {
        assert!(Order::Finite(1000) < Order::Infinity);
        assert_eq!(Order::Finite(2) + Order::Infinity, Order::Infinity);
        assert_eq!(Order::Infinity.ratio(3), TypeValue::Infinity);
        assert_eq!(Order::Finite(8).ratio(2), TypeValue::int(4));
        assert!(TypeValue::int(5) < TypeValue::Infinity);
        assert_eq!(Order::Finite(3).min(Order::Infinity), Order::Finite(3));
    }

    #[test]
    fn serde_forms() {
        let v = TypeValue::Finite(BigRational::new(7.into(), 2.into()));
        assert_eq!(TypeValue::parse(&v.to_string()).unwrap(), v);
        assert_eq!(TypeValue::parse("inf").unwrap(), TypeValue::Infinity);
    }
}
