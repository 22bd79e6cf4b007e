//! Reference values computed without any formula under test.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{eps, Fixed, IntervalValue};
use crate::error::{Error, Result};
use crate::scalar::Rational;
use crate::tag::{Atom, ConstantTag};

/// `Σ_k sign^k z^{2k+1}/(2k+1)` for `0 < z = u/v < 1`: atan (`alternate`) or atanh.
fn odd_series(u: &BigInt, v: &BigInt, alternate: bool, p: u32) -> Fixed {
    let mut acc = Fixed::new(p);
    let (u2, v2) = (u * u, v * v);
    let (mut num, mut den) = (u.clone(), v.clone());
    let stop = eps(p + 1);
    let mut k = 0u64;
    loop {
        let d = &den * BigInt::from(2 * k + 1);
        let term = Rational::new(num.clone(), d.clone());
        let tail = if alternate { term.clone() } else { &term / (Rational::one() - Rational::new(u2.clone(), v2.clone())) };
        if tail < stop {
            acc.widen(&tail);
            return acc;
        }
        let signed = if alternate && k % 2 == 1 { -num.clone() } else { num.clone() };
        acc.add_frac(&signed, &d);
        num *= &u2;
        den *= &v2;
        k += 1;
    }
}

fn series_interval(u: i64, v: i64, alternate: bool, p: u32) -> IntervalValue {
    odd_series(&BigInt::from(u), &BigInt::from(v), alternate, p).interval(p)
}

fn atan_combination(terms: &[(i64, i64)], p: u32) -> IntervalValue {
    let mut acc = IntervalValue::exact(Rational::zero(), p);
    for &(c, q) in terms {
        acc = acc.add(&series_interval(1, q, true, p).scale(&Rational::from_integer(c.into())));
    }
    acc
}

/// π from two arctangent relations whose intervals must overlap.
pub fn reference_pi(bits: u32) -> Result<IntervalValue> {
    let p = bits + 16;
    let machin = atan_combination(&[(16, 5), (-4, 239)], p);
    let gauss = atan_combination(&[(48, 18), (32, 57), (-20, 239)], p);
    let both = machin
        .intersect(&gauss)
        .ok_or_else(|| Error::Consistency("the two arctangent evaluations of π disagree".into()))?;
    Ok(IntervalValue::new(both.lower, both.upper, bits))
}

/// `log p` for a positive integer, by reduction to `[1, 2)` and atanh.
pub fn reference_log_prime(p: &BigInt, bits: u32) -> Result<IntervalValue> {
    if !p.is_positive() {
        return Err(Error::Domain(format!("log of {p}")));
    }
    let prec = bits + 16;
    let k = p.bits() - 1;
    let pow = BigInt::one() << k as usize;
    // log 2 = 2 atanh(1/3)
    let log2 = series_interval(1, 3, false, prec).scale(&Rational::from_integer(2.into()));
    let mut acc = log2.scale(&Rational::from_integer(BigInt::from(k)));
    if *p != pow {
        let frac = odd_series(&(p - &pow), &(p + &pow), false, prec).interval(prec);
        acc = acc.add(&frac.scale(&Rational::from_integer(2.into())));
    }
    Ok(IntervalValue::new(acc.lower, acc.upper, bits))
}

/// `atan(im/re)` for `re > im > 0`.
pub fn reference_arctan(re: &BigInt, im: &BigInt, bits: u32) -> Result<IntervalValue> {
    if !(re > im && im.is_positive()) {
        return Err(Error::UnsupportedConstant(format!("arctan({im}/{re}) outside (0, π/4)")));
    }
    let v = odd_series(im, re, true, bits + 16).interval(bits + 16);
    Ok(IntervalValue::new(v.lower, v.upper, bits))
}

/// The constant named by a tag, to `bits` bits.
pub fn reference(tag: &ConstantTag, bits: u32) -> Result<IntervalValue> {
    let mut acc = IntervalValue::exact(Rational::zero(), bits);
    let n = tag.terms().count() as u32;
    let extra = 8 + 32 - n.leading_zeros()
        + tag.terms().map(|(_, c)| c.abs().ceil().to_integer().bits() as u32).max().unwrap_or(0);
    let p = bits + extra;
    for (atom, c) in tag.terms() {
        let v = match atom {
            Atom::One => IntervalValue::exact(Rational::one(), p),
            Atom::Pi => reference_pi(p)?,
            Atom::Log(q) => reference_log_prime(q, p)?,
            Atom::Arg { re, im } => reference_arctan(re, im, p)?,
        };
        acc = acc.add(&v.scale(c));
    }
    Ok(IntervalValue::new(acc.lower, acc.upper, bits))
}
