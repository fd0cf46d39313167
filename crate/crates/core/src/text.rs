//! Text forms of exact values: rationals as `"p/q"` (or `"p"` for integers).

use std::str::FromStr;

use crate::{Error, Rational, Result};

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    Rational::from_str(s).map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
}

/// Exact value of `"p/q"`, an integer, or a decimal such as `"0.25"` or `"1e-12"`.
pub fn parse_exact(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.contains('/') {
        return parse_rational(t);
    }
    let bad = || Error::Parse(format!("not a number: {s:?}"));
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (int_part, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int_part}{frac}");
    if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(bad());
    }
    let n: num_bigint::BigInt = digits.parse().map_err(|_| bad())?;
    let shift = exp - frac.len() as i32;
    let ten = num_bigint::BigInt::from(10);
    Ok(if shift >= 0 {
        Rational::from_integer(n * ten.pow(shift as u32))
    } else {
        Rational::new(n, ten.pow((-shift) as u32))
    })
}

pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// `#[serde(with = "crate::text::rational")]`
pub mod rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Same as [`rational`] for `Option<Rational>`, with `None` as `null`.
pub mod opt_rational {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&q.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| super::parse_rational(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}
