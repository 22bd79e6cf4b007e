//! JSON schema for formulas; rationals travel as `"p/q"` strings.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use super::{Convergence, FactorialSeries, Formula, SeriesForm};
use crate::error::{Error, Result};
use crate::scalar::{format_gaussian, format_rational, parse_gaussian, parse_rational, GaussianRational, Rational, Scalar};
use crate::tag::ConstantTag;

pub trait JsonScalar: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().expect("checked").into())),
            _ => Err(Error::Parse(format!("expected a rational string, got {v}"))),
        }
    }
}

impl JsonScalar for GaussianRational {
    fn to_json(&self) -> Value {
        json!({"re": format_rational(&self.re), "im": format_rational(&self.im)})
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Object(o) => {
                let re = o.get("re").map(Rational::from_json).transpose()?.unwrap_or_default();
                let im = o.get("im").map(Rational::from_json).transpose()?.unwrap_or_default();
                Ok(GaussianRational::new(re, im))
            }
            Value::String(s) => parse_gaussian(s),
            _ => Rational::from_json(v).map(|r| GaussianRational::new(r, Rational::default())),
        }
    }
}

fn int_json(b: &BigInt) -> Value {
    match b.to_i64() {
        Some(i) => json!(i),
        None => Value::String(b.to_string()),
    }
}

fn int_from(v: &Value, what: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) if n.is_i64() => Ok(n.as_i64().expect("checked").into()),
        Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("{what}: bad integer {s:?}"))),
        _ => Err(Error::Parse(format!("{what}: expected an integer"))),
    }
}

fn uint_from(o: &Map<String, Value>, key: &str, default: Option<u64>) -> Result<u64> {
    match o.get(key) {
        Some(v) => v.as_u64().ok_or_else(|| Error::Parse(format!("{key}: expected a nonnegative integer"))),
        None => default.ok_or_else(|| Error::Parse(format!("missing {key}"))),
    }
}

fn target_json(re: &ConstantTag, im: &ConstantTag) -> Value {
    if im.is_zero() {
        re.to_json()
    } else {
        json!({"re": re.to_json(), "im": im.to_json()})
    }
}

fn target_from(v: &Value) -> Result<(ConstantTag, ConstantTag)> {
    if v.get("kind").is_some() {
        return Ok((ConstantTag::from_json(v)?, ConstantTag::zero()));
    }
    let part = |k: &str| v.get(k).map(ConstantTag::from_json).transpose().map(Option::unwrap_or_default);
    Ok((part("re")?, part("im")?))
}

fn convergence_name(c: Convergence) -> &'static str {
    match c {
        Convergence::Geometric => "geometric",
        Convergence::Slow => "slow",
        Convergence::Conditional => "conditional",
        Convergence::Divergent => "divergent",
    }
}

pub fn formula_to_json<T: Scalar + From<Rational> + JsonScalar>(f: &Formula<T>) -> Value {
    json!({
        "target": target_json(&f.target, &f.imag_target),
        "r0": f.r0.to_json(),
        "r1": f.r1.to_json(),
        "degree": f.degree(),
        "base": int_json(&f.base),
        "period": f.period,
        "start": f.start,
        "offset": f.offset,
        "coeffs": f.coeffs.iter().map(JsonScalar::to_json).collect::<Vec<_>>(),
        "convergence": convergence_name(f.convergence()),
    })
}

/// Parses the formula schema; `offset` defaults to 1 and `start` to 0.
pub fn formula_from_json<T: Scalar + From<Rational> + JsonScalar>(v: &Value) -> Result<Formula<T>> {
    let o = v.as_object().ok_or_else(|| Error::Parse("formula must be an object".into()))?;
    let get = |k: &str| o.get(k).ok_or_else(|| Error::Parse(format!("missing {k}")));
    if let Some(d) = o.get("degree") {
        if d.as_u64() != Some(1) {
            return Err(Error::Domain(format!("only degree 1 is supported, got {d}")));
        }
    }
    let (target, imag_target) = target_from(get("target")?)?;
    let coeffs = get("coeffs")?
        .as_array()
        .ok_or_else(|| Error::Parse("coeffs must be an array".into()))?
        .iter()
        .map(T::from_json)
        .collect::<Result<Vec<_>>>()?;
    let period = uint_from(o, "period", Some(coeffs.len() as u64))? as usize;
    let offset = uint_from(o, "offset", Some(1))?;
    let f = Formula {
        target,
        imag_target,
        r0: o.get("r0").map(T::from_json).transpose()?.unwrap_or_else(T::zero),
        r1: o.get("r1").map(T::from_json).transpose()?.unwrap_or_else(T::one),
        base: int_from(get("base")?, "base")?,
        period,
        start: uint_from(o, "start", Some(0))?,
        offset: u32::try_from(offset).map_err(|_| Error::Domain("offset must be 0 or 1".into()))?,
        coeffs,
    };
    f.check()?;
    Ok(f)
}

pub fn factorial_to_json(f: &FactorialSeries) -> Value {
    let (c, alternating) = f.display_factor();
    json!({
        "kind": "factorial",
        "target": f.target.to_json(),
        "r0": format_rational(&f.r0),
        "factor": format_rational(&f.factor),
        "ratio": format_rational(&f.ratio),
        "order": f.order,
        "display": {"factor": format_rational(&c), "alternating": alternating},
    })
}

pub fn factorial_from_json(v: &Value) -> Result<FactorialSeries> {
    let o = v.as_object().ok_or_else(|| Error::Parse("series must be an object".into()))?;
    let get = |k: &str| o.get(k).ok_or_else(|| Error::Parse(format!("missing {k}")));
    Ok(FactorialSeries {
        target: ConstantTag::from_json(get("target")?)?,
        r0: Rational::from_json(get("r0")?)?,
        factor: Rational::from_json(get("factor")?)?,
        ratio: Rational::from_json(get("ratio")?)?,
        order: uint_from(o, "order", None)?.max(1),
    })
}

pub fn series_to_json(f: &SeriesForm) -> Value {
    json!({
        "n": f.n,
        "s": f.s.to_json(),
        "s_text": format_gaussian(&f.s),
        "r0": f.r0.to_json(),
        "r1": f.r1.to_json(),
        "target": target_json(&f.target, &f.imag_target),
        "conditional": f.conditional,
    })
}
