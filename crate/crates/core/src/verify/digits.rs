//! Spigot extraction of binary or hexadecimal digits at an arbitrary position.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{eps, eval_bbp, Fixed};
use crate::error::{Error, Result};
use crate::formula::BbpFormula;
use crate::scalar::Rational;

const GUARD_START: u32 = 16;
const GUARD_RETRIES: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DigitRun {
    pub base: u32,
    /// Index of the first digit; 0 is the first fractional digit.
    pub position: u64,
    pub digits: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integer_part: Option<String>,
}

fn bits_per_digit(base: u32) -> Result<u32> {
    match base {
        2 => Ok(1),
        16 => Ok(4),
        _ => Err(Error::Domain(format!("digit base must be 2 or 16, got {base}"))),
    }
}

/// `w` with `|b| = 2^w`.
fn binary_exponent(b: &BigInt) -> Option<u64> {
    let a = b.abs();
    (a > BigInt::one() && (&a & (&a - 1u32)).is_zero()).then(|| a.bits() - 1)
}

fn render(mut v: BigInt, base: u32, count: usize) -> String {
    let radix = BigInt::from(base);
    let mut out = vec![b'0'; count];
    for slot in out.iter_mut().rev() {
        let (q, r) = v.div_mod_floor(&radix);
        let d: u32 = r.try_into().expect("digit");
        *slot = std::char::from_digit(d, base).expect("digit").to_ascii_uppercase() as u8;
        v = q;
    }
    String::from_utf8(out).expect("ascii")
}

/// `[lo, hi]·2^-P` enclosing `frac(2^e · value)`; `hi - lo` is the error span.
fn fractional_window(f: &BbpFormula, w: u64, e: u64, p: u32) -> Fixed {
    let mut acc = Fixed::new(p);
    let two = BigInt::from(2);
    let neg = f.base.is_negative();
    let m = f.period as u64;
    let r0 = &f.r0;
    if !r0.is_zero() {
        let den = r0.denom();
        let r = (r0.numer().mod_floor(den) * two.modpow(&BigInt::from(e), den)).mod_floor(den);
        acc.add_frac(&r, den);
    }
    let a: Rational = f.coeffs.iter().map(|c| c.abs()).sum();
    let b_abs = f.base.abs();
    let ratio = Rational::new(b_abs.clone(), &b_abs - 1);
    let mut k = f.start;
    loop {
        let sign_neg = neg && k % 2 == 1;
        let head = w * k <= e;
        for (i, c) in f.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = BigInt::from(k * m + f.offset as u64 + i as u64);
            if d.is_zero() {
                continue;
            }
            let num = if sign_neg { -c.numer() } else { c.numer().clone() };
            let modulus = c.denom() * &d;
            if head {
                let r = (num.mod_floor(&modulus) * two.modpow(&BigInt::from(e - w * k), &modulus)).mod_floor(&modulus);
                acc.add_frac(&r, &modulus);
            } else {
                acc.add_frac(&num, &(modulus << (w * k - e) as usize));
            }
        }
        k += 1;
        if w * k > e {
            // Σ_{j≥k} 2^{e-wj} A/(jm+o) ≤ A·2^{e-wk}/(km+o) · |b|/(|b|-1)
            let den = Rational::from_integer(BigInt::from(k * m + f.offset as u64) << (w * k - e) as usize);
            let tail = &a * &ratio / den;
            if tail <= eps(p + 2) {
                acc.widen(&tail);
                return acc;
            }
        }
    }
}

/// `count` digits of the value in `out_base` (2 or 16) starting at `position`.
pub fn digit_extract(f: &BbpFormula, position: u64, count: usize, out_base: u32) -> Result<DigitRun> {
    let v = bits_per_digit(out_base)?;
    f.check()?;
    let w = binary_exponent(&f.base)
        .ok_or_else(|| Error::Domain(format!("digit extraction needs base ±2^w, got {}", f.base)))?;
    let f = f.effective();
    let integer_part = if position == 0 {
        eval_bbp(&f, 64).ok().and_then(|iv| iv.floor()).map(|n| {
            if n.is_negative() {
                format!("-{}", n.abs().to_str_radix(out_base).to_uppercase())
            } else {
                n.to_str_radix(out_base).to_uppercase()
            }
        })
    } else {
        None
    };
    if count == 0 {
        return Ok(DigitRun { base: out_base, position, digits: String::new(), integer_part });
    }
    let e = position * v as u64;
    let want = count as u32 * v;
    let terms = (e / w + 2) * f.period as u64;
    let term_bits = 64 - terms.leading_zeros();
    let mut guard = GUARD_START;
    for _ in 0..=GUARD_RETRIES {
        let p = want + guard + term_bits;
        let acc = fractional_window(&f, w, e, p);
        let one = BigInt::one() << p as usize;
        let lo = acc.lo.mod_floor(&one);
        let hi = &lo + (&acc.hi - &acc.lo);
        let shift = (p - want) as usize;
        if hi < one && (&lo >> shift) == (&hi >> shift) {
            return Ok(DigitRun { base: out_base, position, digits: render(lo >> shift, out_base, count), integer_part });
        }
        guard *= 2;
    }
    Err(Error::IndeterminateDigit { position, retries: GUARD_RETRIES })
}
