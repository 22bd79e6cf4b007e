//! Target constants of formulas, kept canonically as rational linear
//! combinations over the atoms `1`, `π`, `log p` (p prime) and
//! `arg(a + bi)` (a + bi a Gaussian prime with a > b > 0), so that null
//! formulas are detected structurally.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::factor::{factor_gauss, factorize, GaussInt};
use crate::scalar::{format_rational, parse_rational, GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    One,
    Pi,
    Log(BigInt),
    Arg { re: BigInt, im: BigInt },
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::One => write!(f, "1"),
            Atom::Pi => write!(f, "π"),
            Atom::Log(p) => write!(f, "log {p}"),
            Atom::Arg { re, im } => write!(f, "arg({re}+{im}i)"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ConstantTag {
    terms: BTreeMap<Atom, Rational>,
}

impl ConstantTag {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn atom(a: Atom) -> Self {
        Self::from_terms([(a, Rational::one())])
    }

    pub fn pi() -> Self {
        Self::atom(Atom::Pi)
    }

    pub fn rational(r: Rational) -> Self {
        Self::from_terms([(Atom::One, r)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Atom, Rational)>) -> Self {
        let mut t = Self::zero();
        for (a, c) in terms {
            t.push(a, c);
        }
        t
    }

    fn push(&mut self, a: Atom, c: Rational) {
        let slot = self.terms.entry(a.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&a);
        }
    }

    /// `log q` for a positive rational, decomposed over prime logarithms.
    pub fn log_of(q: &Rational) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::Domain(format!("log of non-positive {}", format_rational(q))));
        }
        let mut t = Self::zero();
        for (p, e) in factorize(&q.numer().to_biguint().expect("positive")) {
            t.push(Atom::Log(p.into()), Rational::from_integer(e.into()));
        }
        for (p, e) in factorize(&q.denom().to_biguint().expect("positive")) {
            t.push(Atom::Log(p.into()), -Rational::from_integer(e.into()));
        }
        Ok(t)
    }

    /// Principal argument of a nonzero Gaussian rational.
    pub fn arg_of(z: &GaussianRational) -> Result<Self> {
        if z.re.is_zero() && z.im.is_zero() {
            return Err(Error::Domain("argument of zero".into()));
        }
        let l = z.re.denom().lcm(z.im.denom());
        let g = GaussInt::new(z.re.numer() * (&l / z.re.denom()), z.im.numer() * (&l / z.im.denom()));
        let f = factor_gauss(&g);
        // quarter turns of π/4 from the unit and the ramified prime 1+i
        let mut eighths = BigInt::from(f.unit * 4 + f.two * 2);
        let mut t = Self::zero();
        let mut approx = (f.unit * 2 + f.two) as f64 * std::f64::consts::FRAC_PI_4;
        for (pi, (e, ec)) in &f.split {
            let c = *e as i64 - *ec as i64;
            if c != 0 {
                t.push(Atom::Arg { re: pi.re.clone(), im: pi.im.clone() }, Rational::from_integer(c.into()));
                approx += c as f64 * pi.im.to_f64().unwrap_or(0.0).atan2(pi.re.to_f64().unwrap_or(1.0));
            }
        }
        let principal = z.im.to_f64().unwrap_or(0.0).atan2(z.re.to_f64().unwrap_or(0.0));
        let turns = ((principal - approx) / std::f64::consts::TAU).round() as i64;
        eighths += BigInt::from(turns) * 16;
        t.push(Atom::Pi, Rational::new(eighths, BigInt::from(8)));
        Ok(t)
    }

    /// `(Re log z, Im log z)` on the principal branch.
    pub fn log_of_gaussian(z: &GaussianRational) -> Result<(Self, Self)> {
        let n = &z.re * &z.re + &z.im * &z.im;
        let re = Self::log_of(&n)?.scale(&Rational::new(BigInt::one(), BigInt::from(2)));
        Ok((re, Self::arg_of(z)?))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(a, v)| (a.clone(), v * c)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Atom, &Rational)> {
        self.terms.iter()
    }

    pub fn single(&self) -> Option<(&Atom, &Rational)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next().expect("one term"))
    }

    /// The rational part, if the tag is purely rational (or zero).
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Atom::One).cloned(),
            _ => None,
        }
    }

    /// Splits `c·atom` so callers can rescale a formula to target `atom` itself.
    /// Logs are grouped: `-log 2` orients to `log 2`, `log 2 - log 3`
    /// stays as is.
    pub fn orientation(&self) -> Rational {
        match self.single() {
            Some((Atom::One, _)) | None => Rational::one(),
            Some((_, c)) => c.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        if self.terms.is_empty() {
            return json!({"kind": "zero"});
        }
        if let Some((a, c)) = self.single() {
            if c.is_one() || *a == Atom::One {
                return atom_json(a, c);
            }
        }
        // a positive combination of logs collapses back to log_of(q)
        if self.terms.keys().all(|a| matches!(a, Atom::Log(_))) && self.terms.values().all(|c| c.is_integer()) {
            if let Some(q) = self.log_argument() {
                return json!({"kind": "log_of", "arg": format_rational(&q)});
            }
        }
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(a, c)| json!([format_rational(c), atom_json(a, &Rational::one())]))
            .collect();
        json!({"kind": "linear", "terms": terms})
    }

    /// `q` such that this tag equals `log q`, when the tag is an integer
    /// combination of prime logarithms.
    pub fn log_argument(&self) -> Option<Rational> {
        let mut q = Rational::one();
        for (a, c) in &self.terms {
            let Atom::Log(p) = a else { return None };
            if !c.is_integer() {
                return None;
            }
            let e = c.to_integer().to_i32()?;
            let pr = Rational::from_integer(p.clone());
            q *= if e >= 0 { num_traits::pow(pr, e as usize) } else { num_traits::pow(pr.recip(), (-e) as usize) };
        }
        Some(q)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("constant tag: {m}"));
        let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| bad("missing kind"))?;
        let text = |k: &str| v.get(k).and_then(Value::as_str).ok_or_else(|| bad(&format!("missing {k}")));
        match kind {
            "zero" => Ok(Self::zero()),
            "pi" => Ok(Self::pi()),
            "rational" => Ok(Self::rational(parse_rational(text("value")?)?)),
            "log_of" => Self::log_of(&parse_rational(text("arg")?)?),
            "arg_of" => {
                let re = parse_rational(text("re")?)?;
                let im = parse_rational(text("im")?)?;
                Self::arg_of(&GaussianRational::new(re, im))
            }
            "linear" => {
                let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
                let mut t = Self::zero();
                for term in terms {
                    let pair = term.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("term must be [coeff, tag]"))?;
                    let c = parse_rational(pair[0].as_str().ok_or_else(|| bad("coefficient"))?)?;
                    t = &t + &Self::from_json(&pair[1])?.scale(&c);
                }
                Ok(t)
            }
            other => Err(bad(&format!("unknown kind {other:?}"))),
        }
    }
}

fn atom_json(a: &Atom, c: &Rational) -> Value {
    match a {
        Atom::One => json!({"kind": "rational", "value": format_rational(c)}),
        Atom::Pi => json!({"kind": "pi"}),
        Atom::Log(p) => json!({"kind": "log_of", "arg": p.to_string()}),
        Atom::Arg { re, im } => json!({"kind": "arg_of", "re": re.to_string(), "im": im.to_string()}),
    }
}

impl Add for &ConstantTag {
    type Output = ConstantTag;
    fn add(self, rhs: Self) -> ConstantTag {
        let mut t = self.clone();
        for (a, c) in &rhs.terms {
            t.push(a.clone(), c.clone());
        }
        t
    }
}

impl Sub for &ConstantTag {
    type Output = ConstantTag;
    fn sub(self, rhs: Self) -> ConstantTag {
        self + &(-rhs)
    }
}

impl Neg for &ConstantTag {
    type Output = ConstantTag;
    fn neg(self) -> ConstantTag {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for ConstantTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        if let Some(q) = self.log_argument().filter(|_| self.terms.len() > 1) {
            return write!(f, "log({})", format_rational(&q));
        }
        for (i, (a, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (a, abs.is_one()) {
                (Atom::One, _) => write!(f, "{}", format_rational(&abs))?,
                (_, true) => write!(f, "{a}")?,
                (_, false) => write!(f, "{}·{a}", format_rational(&abs))?,
            }
        }
        Ok(())
    }
}

/// Unsigned helper for places that hold primes as `BigUint`.
pub fn log_prime(p: &BigUint) -> Atom {
    Atom::Log(BigInt::from_biguint(Sign::Plus, p.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gauss, int, rat};

    #[test]
    fn log_combination_cancels_structurally() {
        let t = &(&ConstantTag::log_of(&rat(3, 2)).unwrap() + &ConstantTag::log_of(&rat(3, 4)).unwrap())
            - &ConstantTag::log_of(&rat(9, 8)).unwrap();
        assert!(t.is_zero());
        let half = ConstantTag::log_of(&rat(1, 2)).unwrap();
        assert_eq!(half.orientation(), int(-1));
        assert!(ConstantTag::log_of(&int(0)).is_err());
    }

    #[test]
    fn arguments_reduce_to_pi_and_gaussian_primes() {
        let quarter = ConstantTag::pi().scale(&rat(1, 4));
        assert_eq!(ConstantTag::arg_of(&gauss(rat(1, 2), rat(1, 2))).unwrap(), quarter);
        assert_eq!(ConstantTag::arg_of(&gauss(int(1), int(-1))).unwrap(), -&quarter);
        assert_eq!(ConstantTag::arg_of(&gauss(int(-1), int(0))).unwrap(), ConstantTag::pi());
        // π/4 = 2·arg(1 + i/2) - arg((7 + i)/8)
        let a = ConstantTag::arg_of(&gauss(int(1), rat(1, 2))).unwrap();
        let b = ConstantTag::arg_of(&gauss(rat(7, 8), rat(1, 8))).unwrap();
        assert_eq!(&a.scale(&int(2)) - &b, quarter);
        // arg(1 + 2i) = π/2 - arg(2 + i)
        let c = ConstantTag::arg_of(&gauss(int(1), int(2))).unwrap();
        assert_eq!(&c + &ConstantTag::arg_of(&gauss(int(2), int(1))).unwrap(), ConstantTag::pi().scale(&rat(1, 2)));
    }

    #[test]
    fn json_round_trip() {
        let tags = [
            ConstantTag::zero(),
            ConstantTag::pi(),
            ConstantTag::rational(rat(5, 8)),
            ConstantTag::log_of(&int(2)).unwrap(),
            ConstantTag::log_of(&rat(9, 8)).unwrap(),
            &ConstantTag::pi().scale(&rat(1, 4)) + &ConstantTag::log_of(&int(2)).unwrap().scale(&rat(-1, 2)),
            ConstantTag::arg_of(&gauss(int(2), int(1))).unwrap(),
        ];
        for t in tags {
            let v = t.to_json();
            assert_eq!(ConstantTag::from_json(&v).unwrap(), t, "{v}");
        }
        assert_eq!(ConstantTag::log_of(&rat(9, 8)).unwrap().to_json(), json!({"kind": "log_of", "arg": "9/8"}));
    }
}
