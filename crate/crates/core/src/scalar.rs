//! Scalar abstraction shared by the polynomial and series code, plus the
//! textual `p/q` format used by every JSON surface.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};

/// Field-like scalar: exact rationals, Gaussian rationals, or hardware floats.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync {}

impl<T> Scalar for T where T: Clone + Debug + PartialEq + Num + Neg<Output = T> + Send + Sync {}

pub type Rational = BigRational;
pub type GaussianRational = Complex<Rational>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn gauss(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

pub fn gauss_real(re: Rational) -> GaussianRational {
    Complex::new(re, Rational::zero())
}

pub fn is_real(z: &GaussianRational) -> bool {
    z.im.is_zero()
}

/// Squared modulus `re² + im²`.
pub fn norm_sqr(z: &GaussianRational) -> Rational {
    &z.re * &z.re + &z.im * &z.im
}

/// Formats as `p/q`, omitting `/q` when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Parses the command-line form `re+im*i`, e.g. `1/2+1/2*i`, `1-i`, `7/8+1/8*i`, `i/2`.
pub fn parse_gaussian(s: &str) -> Result<GaussianRational> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse("empty gaussian rational".into()));
    }
    // split at the last top-level sign that is not the leading one
    let bytes = t.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        if (bytes[idx] == b'+' || bytes[idx] == b'-') && bytes[idx - 1] != b'/' {
            split = Some(idx);
            break;
        }
    }
    let parts: Vec<&str> = match split {
        Some(idx) => vec![&t[..idx], &t[idx..]],
        None => vec![&t[..]],
    };
    let mut re = Rational::zero();
    let mut im = Rational::zero();
    for p in parts {
        if p.contains('i') {
            im += parse_imag(p)?;
        } else {
            re += parse_rational(p.trim_start_matches('+'))?;
        }
    }
    Ok(Complex::new(re, im))
}

fn parse_imag(p: &str) -> Result<Rational> {
    let (sign, body) = match p.strip_prefix('-') {
        Some(b) => (-1, b),
        None => (1, p.strip_prefix('+').unwrap_or(p)),
    };
    let value = if body == "i" {
        Rational::one()
    } else if let Some(c) = body.strip_suffix("*i") {
        parse_rational(c)?
    } else if let Some(d) = body.strip_prefix("i/") {
        parse_rational(&format!("1/{d}"))?
    } else if let Some(c) = body.strip_suffix('i') {
        parse_rational(c)?
    } else if let Some((c, d)) = body.split_once("*i/") {
        parse_rational(c)? / parse_rational(d)?
    } else {
        return Err(Error::Parse(format!("invalid imaginary part {p:?}")));
    };
    Ok(if sign < 0 { -value } else { value })
}

pub fn format_gaussian(z: &GaussianRational) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => format_rational(&z.re),
        (true, false) => format!("{}*i", format_rational(&z.im)),
        (false, false) => {
            let sign = if z.im.is_negative() { "-" } else { "+" };
            format!("{}{}{}*i", format_rational(&z.re), sign, format_rational(&z.im.abs()))
        }
    }
}

/// Serde adapters for the `"p/q"` string form.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format_rational(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter().map(|s| parse_rational(s).map_err(serde::de::Error::custom)).collect()
        }
    }
}

/// Serde adapters for `{"re": "p/q", "im": "p/q"}`.
pub mod serde_gaussian {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        #[serde(with = "super::serde_rational")]
        re: Rational,
        #[serde(with = "super::serde_rational")]
        im: Rational,
    }

    pub fn serialize<S: Serializer>(z: &GaussianRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        Repr { re: z.re.clone(), im: z.im.clone() }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<GaussianRational, D::Error> {
        let r = Repr::deserialize(d)?;
        Ok(Complex::new(r.re, r.im))
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[GaussianRational], s: S) -> std::result::Result<S::Ok, S::Error> {
            let reprs: Vec<Repr> = v.iter().map(|z| Repr { re: z.re.clone(), im: z.im.clone() }).collect();
            reprs.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<GaussianRational>, D::Error> {
            let v = Vec::<Repr>::deserialize(d)?;
            Ok(v.into_iter().map(|r| Complex::new(r.re, r.im)).collect())
        }
    }
}
