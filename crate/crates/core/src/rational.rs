//! Exact rational scalars and their text form.
//!
//! Values are `num_rational::BigRational`, always kept in lowest terms with
//! a positive denominator. The text form is `"p"` or `"p/q"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for `num/den`; panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim().replace('\u{2212}', "-");
    let bad = || Error::input(format!("not a rational: {s:?}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::input(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Lowest-terms text form, `"p"` for integers.
pub fn format(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn format_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(format).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

/// Nearest `f64`, for drawing only.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Serde carrier: serializes as the text form, accepts strings or JSON integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Q(pub Rational);

impl From<Rational> for Q {
    fn from(q: Rational) -> Self {
        Q(q)
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct QVisitor;
        impl Visitor<'_> for QVisitor {
            type Value = Q;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as \"p\", \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Q, E> {
                parse(v).map(Q).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Q, E> {
                Ok(Q(int(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Q, E> {
                Ok(Q(Rational::from_integer(BigInt::from(v))))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Q, E> {
                Err(E::custom(format!("floating-point value {v} rejected; use \"p/q\"")))
            }
        }
        d.deserialize_any(QVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form_round_trip() {
        assert_eq!(format(&frac(6, -4)), "-3/2");
        assert_eq!(format(&int(7)), "7");
        assert_eq!(parse("-3/2").unwrap(), frac(-3, 2));
        assert_eq!(parse(" 4/2 ").unwrap(), int(2));
        assert_eq!(parse("\u{2212}2").unwrap(), int(-2));
        assert!(parse("1/0").is_err());
        assert!(parse("0.5").is_err());
    }

    #[test]
    fn serde_accepts_integers_and_strings() {
        let v: Vec<Q> = serde_json::from_str(r#"[1, "-2", "3/6"]"#).unwrap();
        assert_eq!(v, vec![Q(int(1)), Q(int(-2)), Q(frac(1, 2))]);
        assert_eq!(serde_json::to_string(&Q(frac(-1, 3))).unwrap(), r#""-1/3""#);
        assert!(serde_json::from_str::<Q>("0.5").is_err());
    }
}
