//! Classical formulas rebuilt from the series by regrouping, splitting and combining.

use num_bigint::BigInt;

use super::{combine, make_series, regroup, split_re_im, BbpFormula, Formula};
use crate::error::{Error, Result};
use crate::scalar::{gauss, int, rat, GaussianRational, Rational};

fn point(re: Rational, im: Rational) -> GaussianRational {
    gauss(re, im)
}

fn real_point(q: Rational) -> GaussianRational {
    gauss(q, Rational::default())
}

/// `(real, imaginary)` formulas from `log s` grouped modulo `m`.
pub fn split_at(s: &GaussianRational, n: u64, m: usize) -> Result<(BbpFormula, BbpFormula)> {
    let g = regroup(&make_series(n, s)?, m, None)?.complex();
    split_re_im(&g)
}

/// `log 2 = Σ 1/(2^j j)`, written from `k = 1` with offset 0.
pub fn bernoulli_log2() -> Result<BbpFormula> {
    Ok(regroup(&make_series(1, &real_point(rat(1, 2)))?, 1, None)?.real()?.relayout(0, 1))
}

/// `log 2` in base 16 from order 4 at `s = 1/2`, shown from `k = 1` with offset 0.
pub fn log2_bbp16() -> Result<BbpFormula> {
    let f = regroup(&make_series(4, &real_point(rat(1, 2)))?, 8, Some(&BigInt::from(16)))?.real()?;
    Ok(f.relayout(0, 1).integerized())
}

/// π in base 16 from the imaginary part at `s = (1+i)/2`.
pub fn pi16() -> Result<BbpFormula> {
    Ok(split_at(&point(rat(1, 2), rat(1, 2)), 1, 8)?.1)
}

/// `log 2` in base 16 from the real part at `s = (1+i)/2`, with offset 0.
pub fn log2_16() -> Result<BbpFormula> {
    Ok(split_at(&point(rat(1, 2), rat(1, 2)), 1, 8)?.0.relayout(0, 0))
}

/// The base-16 null formula: the two base-16 `log 2` formulas subtracted.
pub fn bbp_null_raw() -> Result<BbpFormula> {
    combine(&[(int(1), log2_16()?), (int(-1), log2_bbp16()?)])
}

/// `(-8, 8, 4, 8, 2, 2, -1, 0)` in base 16.
pub fn bbp_null16() -> Result<BbpFormula> {
    combine(&[(int(-8), bbp_null_raw()?)])
}

/// π in base 16 with four nonzero coefficients.
pub fn plouffe() -> Result<BbpFormula> {
    combine(&[(int(1), pi16()?), (int(2), bbp_null_raw()?)])
}

/// Series for `log q` at order 1, grouped with period 1.
pub fn log_rational(q: &Rational) -> Result<BbpFormula> {
    regroup(&make_series(1, &real_point(q.clone()))?, 1, None)?.real()
}

/// `log(3/2) + log(3/4) - log(9/8) = 0` in base 64, scaled to integers.
pub fn null64() -> Result<BbpFormula> {
    combine(&[
        (int(32), log_rational(&rat(3, 2))?),
        (int(32), log_rational(&rat(3, 4))?),
        (int(-32), log_rational(&rat(9, 8))?),
    ])
}

/// `π = 4 Σ (-1)^k/(2k+1)` from `s = 1 + i`.
pub fn machin() -> Result<BbpFormula> {
    Ok(split_at(&point(int(1), int(1)), 1, 2)?.1)
}

/// `π = 8/3 + 4 Σ_{k≥1} (1/(4k+1) - 1/(4k+3))` from order 2 at `s = 1 + i`.
pub fn leibniz() -> Result<BbpFormula> {
    let f = split_at(&point(int(1), int(1)), 2, 4)?.1;
    Ok(f.to_positive_base().relayout(1, 1).integerized())
}

/// Imaginary part at `s = (7+i)/8`, period 4, base `-1024`.
pub fn bellard_seven_eighths() -> Result<BbpFormula> {
    Ok(split_at(&point(rat(7, 8), rat(1, 8)), 1, 4)?.1)
}

/// Imaginary part at `s = 1 + i/2`, period 10, base `-1024`.
pub fn bellard_one_half() -> Result<BbpFormula> {
    Ok(split_at(&point(int(1), rat(1, 2)), 1, 10)?.1)
}

/// `π/4 = 2 arg(2+i) - arg(7+i)`, merged over period 20 and oriented to π.
pub fn bellard() -> Result<BbpFormula> {
    let half = bellard_one_half()?;
    let eighth = bellard_seven_eighths()?;
    let f = combine(&[(int(2), half), (int(-1), eighth)])?.oriented();
    if f.target != crate::tag::ConstantTag::pi() {
        return Err(Error::Derivation(format!("Bellard combination has target {}", f.target)));
    }
    Ok(f.integerized())
}

/// The period-20 display layout: coefficients shown as given by the
/// two merged periods 4 and 10.
pub fn bellard_display_terms() -> Vec<(usize, usize, i64)> {
    // (modulus, residue, numerator) with π = (1/64) Σ (-1024)^{-k} Σ numerator/(modulus·k + residue)
    vec![(4, 1, -32), (4, 3, -1), (10, 1, 256), (10, 3, -64), (10, 5, -4), (10, 7, -4), (10, 9, 1)]
}

/// Builds a period-`m` formula from `(modulus, residue, numerator)` terms
/// with `modulus | m`, all over the same base.
pub fn from_residue_terms(
    target: crate::tag::ConstantTag,
    r0: Rational,
    r1: Rational,
    base: BigInt,
    m: usize,
    terms: &[(usize, usize, i64)],
) -> Result<BbpFormula> {
    let mut coeffs = vec![Rational::default(); m];
    for &(modulus, residue, num) in terms {
        if !m.is_multiple_of(modulus) || residue == 0 || residue > modulus {
            return Err(Error::Domain(format!("term {num}/({modulus}k+{residue}) does not fit period {m}")));
        }
        let d = m / modulus;
        coeffs[d * residue - 1] += Rational::from_integer(BigInt::from(num * d as i64));
    }
    Formula::new(target, r0, r1, base, m, 0, 1, coeffs)
}
