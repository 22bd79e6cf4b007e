//! Direct summation with rigorous tail bounds.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{eps, reference, Fixed, IntervalValue};
use crate::error::{Error, Result};
use crate::formula::catalog::CatalogEntry;
use crate::formula::{BbpFormula, Convergence, FactorialSeries};
use crate::scalar::Rational;

/// Block cap for `|base| = 1` formulas.
pub const SLOW_BLOCKS: u64 = 1 << 14;
/// Term cap for factorial series with `|ratio| = 1`.
pub const SLOW_TERMS: u64 = 1 << 15;

fn guard(terms: u64) -> u32 {
    64 - terms.leading_zeros() + 4
}

fn abs_sum(f: &BbpFormula) -> Rational {
    f.coeffs.iter().map(|c| c.abs()).sum()
}

fn add_block(acc: &mut Fixed, f: &BbpFormula, k: u64, bk: &BigInt) {
    for (i, c) in f.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let d = BigInt::from(k) * BigInt::from(f.period) + BigInt::from(f.offset) + BigInt::from(i);
        if d.is_zero() {
            continue;
        }
        acc.add_frac(c.numer(), &(c.denom() * d * bk));
    }
}

/// Interval for a formula with `|base| ≥ 2`.
pub fn eval_bbp(f: &BbpFormula, bits: u32) -> Result<IntervalValue> {
    f.check()?;
    match f.convergence() {
        Convergence::Geometric => {}
        Convergence::Conditional => {
            return Err(Error::NeedsRegrouping("base -1 converges only conditionally; pair terms first".into()))
        }
        Convergence::Slow => return Err(Error::NeedsRegrouping("base 1 has no geometric tail bound".into())),
        Convergence::Divergent => return Err(Error::Domain("series diverges".into())),
    }
    let f = f.effective();
    let b_abs = f.base.abs();
    let log_b = b_abs.bits() - 1;
    let blocks = (bits as u64 + 8) / log_b.max(1) + 2;
    let p = bits + guard(blocks * f.period as u64);
    let mut acc = Fixed::new(p);
    let a = abs_sum(&f);
    let target = eps(bits + 2);
    let ratio = Rational::new(b_abs.clone(), &b_abs - 1);
    let mut bk = num_traits::pow(f.base.clone(), f.start as usize);
    let mut k = f.start;
    loop {
        add_block(&mut acc, &f, k, &bk);
        k += 1;
        bk *= &f.base;
        let den = BigInt::from(k) * BigInt::from(f.period) + BigInt::from(f.offset);
        let tail = &a * &ratio / Rational::from_integer(bk.abs() * den);
        if tail <= target {
            acc.widen(&tail);
            break;
        }
    }
    let iv = acc.interval(bits);
    Ok(IntervalValue::new(&iv.lower + &f.r0, &iv.upper + &f.r0, bits))
}

/// Interval for `|base| = 1`: base `-1` is paired into base 1, then summed
/// over at most `max_blocks` blocks; the precision reports what was reached.
pub fn eval_paired(f: &BbpFormula, bits: u32, max_blocks: u64) -> Result<IntervalValue> {
    f.check()?;
    if f.base.abs() != BigInt::one() {
        return eval_bbp(f, bits);
    }
    let g = f.to_positive_base().effective();
    if g.convergence() == Convergence::Divergent {
        return Err(Error::Domain("series diverges".into()));
    }
    let m = g.period as u64;
    let o = g.offset as u64;
    // |block(k)| ≤ S/(km+o)², S = Σ|a_i|·i
    let s: Rational = g.coeffs.iter().enumerate().map(|(i, c)| c.abs() * Rational::from_integer(i.into())).sum();
    let want = eps(bits + 2);
    let mut blocks = 2u64;
    let tail_after = |n: u64| {
        let k1 = g.start + n;
        &s / Rational::from_integer(BigInt::from(m) * BigInt::from((k1 - 1) * m + o))
    };
    while blocks < max_blocks && tail_after(blocks) > want {
        blocks *= 2;
    }
    let blocks = blocks.min(max_blocks);
    let p = bits + guard(blocks * m);
    let mut acc = Fixed::new(p);
    let one = BigInt::one();
    for k in g.start..g.start + blocks {
        add_block(&mut acc, &g, k, &one);
    }
    acc.widen(&tail_after(blocks));
    let iv = acc.interval(bits);
    Ok(IntervalValue::new(&iv.lower + &g.r0, &iv.upper + &g.r0, bits))
}

/// Interval for `r0 + factor Σ_{j≥1} x^j/(j…(j+n-1))`.
pub fn eval_factorial(fs: &FactorialSeries, bits: u32, max_terms: u64) -> Result<IntervalValue> {
    let x = &fs.ratio;
    let n = fs.order;
    if x.abs() > Rational::one() {
        return Err(Error::Domain(format!("ratio {x} outside the unit interval")));
    }
    if x.is_one() && n == 1 {
        return Err(Error::Domain("series diverges".into()));
    }
    let geometric = x.abs() < Rational::one();
    let terms_guess = if geometric { max_terms.min(4 * bits as u64 + 64) } else { max_terms };
    let p = bits + guard(terms_guess) + fs.factor.abs().ceil().to_integer().bits() as u32;
    let mut acc = Fixed::new(p);
    let want = eps(p);
    let (u, v) = (x.numer().clone(), x.denom().clone());
    let (mut un, mut vn) = (u.clone(), v.clone());
    // P_j = j(j+1)…(j+n-1)
    let mut pj: BigInt = (1..=n).map(BigInt::from).product();
    let mut j = 1u64;
    loop {
        let term_num = &un * fs.factor.numer();
        let term_den = &vn * &pj * fs.factor.denom();
        acc.add_frac(&term_num, &term_den);
        // next term
        un *= &u;
        vn *= &v;
        pj = pj * BigInt::from(j + n) / BigInt::from(j);
        j += 1;
        let next = Rational::new(un.abs() * fs.factor.numer().abs(), &vn * &pj * fs.factor.denom());
        let tail = if geometric {
            next / (Rational::one() - x.abs())
        } else if x.is_negative() {
            next
        } else {
            // Σ_{i≥j} 1/(i…(i+n-1)) = 1/((n-1)·j…(j+n-2))
            let q: BigInt = (j..j + n - 1).map(BigInt::from).product();
            fs.factor.abs() / Rational::from_integer(q * BigInt::from(n - 1))
        };
        if tail <= want || j > max_terms {
            acc.widen(&tail);
            break;
        }
    }
    let iv = acc.interval(bits);
    Ok(IntervalValue::new(&iv.lower + &fs.r0, &iv.upper + &fs.r0, bits))
}

pub fn eval_entry(e: &CatalogEntry, bits: u32) -> Result<IntervalValue> {
    match e {
        CatalogEntry::Bbp(f) if f.convergence() == Convergence::Geometric => eval_bbp(f, bits),
        CatalogEntry::Bbp(f) => eval_paired(f, bits, SLOW_BLOCKS),
        CatalogEntry::Factorial(fs) => eval_factorial(fs, bits, SLOW_TERMS),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub method: &'static str,
    pub value: IntervalValue,
    pub reference: IntervalValue,
}

impl VerifyReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ok": self.ok,
            "method": self.method,
            "value": self.value.to_json(),
            "reference": self.reference.to_json(),
        })
    }
}

fn report(value: IntervalValue, target: &crate::tag::ConstantTag, bits: u32, method: &'static str) -> Result<VerifyReport> {
    let reference = reference(target, bits)?;
    Ok(VerifyReport { ok: value.overlaps(&reference), method, value, reference })
}

/// Overlap of the formula's interval with the reference value of its target.
pub fn verify_formula(f: &BbpFormula, bits: u32) -> Result<VerifyReport> {
    if !f.imag_target.is_zero() {
        return Err(Error::UnsupportedConstant("complex target; split real and imaginary parts first".into()));
    }
    match f.convergence() {
        Convergence::Geometric => report(eval_bbp(f, bits)?, &f.target, bits, "geometric"),
        _ => report(eval_paired(f, bits, SLOW_BLOCKS)?, &f.target, bits, "paired"),
    }
}

pub fn verify_entry(e: &CatalogEntry, bits: u32) -> Result<VerifyReport> {
    match e {
        CatalogEntry::Bbp(f) => verify_formula(f, bits),
        CatalogEntry::Factorial(fs) => report(eval_factorial(fs, bits, SLOW_TERMS)?, &fs.target, bits, "factorial"),
    }
}
