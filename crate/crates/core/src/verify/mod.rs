//! Certified numerics: interval evaluation, independent reference
//! constants, digit extraction.

mod digits;
mod egyptian;
mod eval;
mod reference;

pub use digits::{digit_extract, DigitRun};
pub use egyptian::{egyptian_check, EgyptianReport};
pub use eval::{eval_bbp, eval_entry, eval_factorial, eval_paired, verify_entry, verify_formula, VerifyReport};
pub use reference::{reference, reference_arctan, reference_log_prime, reference_pi};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::scalar::{format_rational, Rational};

/// Closed rational interval with `upper - lower ≤ 2^{2 - precision_bits}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntervalValue {
    #[serde(with = "crate::scalar::serde_rational")]
    pub lower: Rational,
    #[serde(with = "crate::scalar::serde_rational")]
    pub upper: Rational,
    pub precision_bits: u32,
}

impl IntervalValue {
    pub fn exact(r: Rational, bits: u32) -> Self {
        IntervalValue { lower: r.clone(), upper: r, precision_bits: bits }
    }

    /// Interval `[lo, hi]`; the precision is capped at what the width allows.
    pub fn new(lower: Rational, upper: Rational, requested: u32) -> Self {
        debug_assert!(lower <= upper);
        let mut v = IntervalValue { lower, upper, precision_bits: requested };
        v.precision_bits = requested.min(v.width_bits());
        v
    }

    /// Largest `p` with `width ≤ 2^{2-p}` (`u32::MAX` for a point).
    pub fn width_bits(&self) -> u32 {
        let w = self.width();
        if w.is_zero() {
            return u32::MAX;
        }
        // largest e with w·2^e ≤ 1
        let (n, d) = (w.numer().clone(), w.denom().clone());
        let fits = |e: i64| if e >= 0 { (&n << e as usize) <= d } else { n <= (&d << (-e) as usize) };
        let mut e = d.bits() as i64 - n.bits() as i64;
        while !fits(e) {
            e -= 1;
        }
        while fits(e + 1) {
            e += 1;
        }
        (e + 2).clamp(0, u32::MAX as i64) as u32
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn overlaps(&self, o: &IntervalValue) -> bool {
        self.lower <= o.upper && o.lower <= self.upper
    }

    pub fn intersect(&self, o: &IntervalValue) -> Option<IntervalValue> {
        let lo = (&self.lower).max(&o.lower).clone();
        let hi = (&self.upper).min(&o.upper).clone();
        (lo <= hi).then(|| IntervalValue::new(lo, hi, self.precision_bits.max(o.precision_bits)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let (a, b) = (&self.lower * c, &self.upper * c);
        let (lo, hi) = if c.is_negative() { (b, a) } else { (a, b) };
        IntervalValue { lower: lo, upper: hi, precision_bits: self.precision_bits }
    }

    pub fn add(&self, o: &Self) -> Self {
        IntervalValue::new(&self.lower + &o.lower, &self.upper + &o.upper, self.precision_bits.min(o.precision_bits))
    }

    pub fn midpoint(&self) -> f64 {
        ((&self.lower + &self.upper) / Rational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }

    /// `floor` of every point, when they agree.
    pub fn floor(&self) -> Option<BigInt> {
        let a = self.lower.floor().to_integer();
        (a == self.upper.floor().to_integer()).then_some(a)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "lower": format_rational(&self.lower),
            "upper": format_rational(&self.upper),
            "precision_bits": self.precision_bits,
            "approx": self.midpoint(),
        })
    }
}

/// Fixed-point accumulator at `2^-p`, keeping a floor and a ceiling.
#[derive(Clone, Debug)]
pub(crate) struct Fixed {
    pub p: u32,
    pub lo: BigInt,
    pub hi: BigInt,
}

impl Fixed {
    pub fn new(p: u32) -> Self {
        Fixed { p, lo: BigInt::zero(), hi: BigInt::zero() }
    }

    /// Adds `num/den` (any signs).
    pub fn add_frac(&mut self, num: &BigInt, den: &BigInt) {
        let n = num << self.p as usize;
        let (q, r) = n.div_mod_floor(den);
        if r.is_zero() {
            self.lo += &q;
            self.hi += q;
        } else {
            self.hi += &q + 1;
            self.lo += q;
        }
    }

    /// Widens by `±t` for a nonnegative rational error bound `t`.
    pub fn widen(&mut self, t: &Rational) {
        let e = (t * Rational::from_integer(BigInt::one() << self.p as usize)).ceil().to_integer();
        self.lo -= &e;
        self.hi += e;
    }

    pub fn interval(&self, requested: u32) -> IntervalValue {
        let den = BigInt::one() << self.p as usize;
        IntervalValue::new(Rational::new(self.lo.clone(), den.clone()), Rational::new(self.hi.clone(), den), requested)
    }
}

/// `2^-bits`.
pub(crate) fn eps(bits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << bits as usize)
}

#[cfg(test)]
mod tests;
