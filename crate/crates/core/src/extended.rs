//! Nonnegative reals extended with `+inf`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Literal token used for infinite values in every report format.
pub const INF_TOKEN: &str = "inf";

/// A distance that may be `+inf`. Addition saturates at `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended {
    Finite(f64),
    Infinite,
}

impl Extended {
    pub const ZERO: Extended = Extended::Finite(0.0);

    pub fn is_finite(self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    /// `alpha * self` for `alpha >= 0`, with `0 * inf = 0`.
    pub fn scale(self, alpha: f64) -> Extended {
        match self {
            Extended::Finite(v) => Extended::Finite(alpha * v),
            Extended::Infinite if alpha == 0.0 => Extended::ZERO,
            Extended::Infinite => Extended::Infinite,
        }
    }

    pub fn max(self, other: Extended) -> Extended {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl From<f64> for Extended {
    fn from(v: f64) -> Self {
        if v == f64::INFINITY {
            Extended::Infinite
        } else {
            Extended::Finite(v)
        }
    }
}

impl Add for Extended {
    type Output = Extended;

    fn add(self, rhs: Extended) -> Extended {
        match (self, rhs) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a + b),
            _ => Extended::Infinite,
        }
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => a.partial_cmp(b),
            (Extended::Finite(_), Extended::Infinite) => Some(Ordering::Less),
            (Extended::Infinite, Extended::Finite(_)) => Some(Ordering::Greater),
            (Extended::Infinite, Extended::Infinite) => Some(Ordering::Equal),
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinite => f.write_str(INF_TOKEN),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => serializer.serialize_f64(*v),
            Extended::Infinite => serializer.serialize_str(INF_TOKEN),
        }
    }
}

impl<'de> Deserialize<'de> for Extended {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExtendedVisitor;

        impl Visitor<'_> for ExtendedVisitor {
            type Value = Extended;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a number or the string \"{INF_TOKEN}\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Extended, E> {
                Ok(Extended::Finite(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Extended, E> {
                Ok(Extended::Finite(v as f64))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Extended, E> {
                Ok(Extended::Finite(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Extended, E> {
                if v == INF_TOKEN {
                    Ok(Extended::Infinite)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }

        deserializer.deserialize_any(ExtendedVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn addition_saturates() {
        assert_eq!(Extended::Finite(1.0) + Extended::Finite(2.0), Extended::Finite(3.0));
        assert_eq!(Extended::Finite(1.0) + Extended::Infinite, Extended::Infinite);
        assert_eq!(Extended::Infinite + Extended::Infinite, Extended::Infinite);
    }

    #[test]
    fn ordering_puts_infinity_last() {
        assert!(Extended::Finite(1e300) < Extended::Infinite);
        assert_eq!(Extended::Finite(2.0).max(Extended::Infinite), Extended::Infinite);
        assert_eq!(Extended::Infinite.scale(0.0), Extended::ZERO);
    }

    #[test]
    fn json_uses_inf_token() {
        let v = vec![Extended::Finite(0.5), Extended::Infinite];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"[0.5,"inf"]"#);
        let back: Vec<Extended> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<Extended>(r#""infinity""#).is_err());
    }
}
