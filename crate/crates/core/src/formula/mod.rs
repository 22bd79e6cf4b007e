//! Instantiation of the logarithm series and its transformations.

mod bbp;
pub mod catalog;
pub mod derive;
mod display;
pub mod json;
pub mod subgroup;

pub use bbp::{combine, split_re_im, BbpFormula, Convergence, Efficiency, Formula, GaussianBbpFormula};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{binomial, factorial, gauss_pow};
use crate::error::{Error, Result};
use crate::logpoly::poly_b;
use crate::scalar::{gauss_real, is_real, norm_sqr, GaussianRational, Rational};
use crate::tag::ConstantTag;

/// `log s = r0 + r1 Σ_{j≥0} (1-s)^{j+n} / ((j+1)(j+2)…(j+n))`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesForm {
    pub n: u64,
    pub s: GaussianRational,
    pub r0: GaussianRational,
    pub r1: GaussianRational,
    pub target: ConstantTag,
    pub imag_target: ConstantTag,
    /// `|s-1| = 1` with `n = 1`: the series converges only conditionally.
    pub conditional: bool,
}

impl SeriesForm {
    /// `1 - s`.
    pub fn ratio(&self) -> GaussianRational {
        GaussianRational::one() - self.s.clone()
    }

    /// Real form with factorial denominators, oriented to the positive log.
    pub fn factorial_form(&self) -> Result<FactorialSeries> {
        if !is_real(&self.s) {
            return Err(Error::UnsupportedPoint(format!("factorial form needs a real point, got {}", crate::scalar::format_gaussian(&self.s))));
        }
        let x = self.ratio().re;
        let factor = &self.r1.re * num_traits::pow(x.clone(), (self.n - 1) as usize);
        let fs = FactorialSeries {
            target: self.target.clone(),
            r0: self.r0.re.clone(),
            factor,
            ratio: x,
            order: self.n,
        };
        Ok(fs.oriented())
    }
}

pub fn make_series(n: u64, s: &GaussianRational) -> Result<SeriesForm> {
    if n == 0 {
        return Err(Error::Domain("order n must be positive".into()));
    }
    if s.is_zero() {
        return Err(Error::Domain("s = 0".into()));
    }
    let x = GaussianRational::one() - s.clone();
    let d2 = norm_sqr(&x);
    if d2 > Rational::one() {
        return Err(Error::Domain(format!("|s-1| > 1 at s = {}", crate::scalar::format_gaussian(s))));
    }
    let fact = gauss_real(Rational::from_integer(factorial(n - 1)));
    let s_pow = gauss_pow(s, (n - 1) as i64)?;
    let b = poly_b(n)?.eval_at(s, |c| gauss_real(c.clone()));
    let r0 = -(fact.clone() * b) / s_pow.clone();
    let sign = if n.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    let r1 = fact * gauss_real(sign) / s_pow;
    let (target, imag_target) = if is_real(s) {
        (ConstantTag::log_of(&s.re)?, ConstantTag::zero())
    } else {
        ConstantTag::log_of_gaussian(s)?
    };
    Ok(SeriesForm { n, s: s.clone(), r0, r1, target, imag_target, conditional: n == 1 && d2.is_one() })
}

/// `c_l` with `1/binom(j+n, n) = Σ_{l=1..n} c_l/(j+l)`.
pub fn partial_fractions(n: u64) -> Vec<Rational> {
    (1..=n)
        .map(|l| {
            let c = BigInt::from(n) * binomial(n - 1, (l - 1) as i64);
            Rational::from_integer(if l % 2 == 1 { c } else { -c })
        })
        .collect()
}

/// `target = r0 + factor Σ_{j≥1} ratio^j / (j(j+1)…(j+order-1))`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorialSeries {
    pub target: ConstantTag,
    pub r0: Rational,
    pub factor: Rational,
    pub ratio: Rational,
    pub order: u64,
}

impl FactorialSeries {
    /// From the usual display `r0 + c Σ (±1)^{j+1} / (q^j j…(j+order-1))`,
    /// where `alternating` selects the `(-1)^{j+1}` sign and `q = 1/|ratio|`.
    pub fn from_display(target: ConstantTag, r0: Rational, c: Rational, q: Rational, alternating: bool, order: u64) -> Self {
        let mut ratio = q.recip();
        let mut factor = c;
        if alternating {
            ratio = -ratio;
            factor = -factor;
        }
        FactorialSeries { target, r0, factor, ratio, order }
    }

    /// `(c, alternating)` of the display form.
    pub fn display_factor(&self) -> (Rational, bool) {
        if self.ratio.is_negative() {
            (-self.factor.clone(), true)
        } else {
            (self.factor.clone(), false)
        }
    }

    pub fn oriented(&self) -> Self {
        let c = self.target.orientation();
        if c.is_one() {
            return self.clone();
        }
        let inv = c.recip();
        FactorialSeries {
            target: self.target.scale(&inv),
            r0: &self.r0 * &inv,
            factor: &self.factor * &inv,
            ..self.clone()
        }
    }

    /// `1/(j…(j+n-1)) = Σ_i e_i/(j+i)` with `e_i = (-1)^i binom(n-1,i)/(n-1)!`.
    pub fn partial_fractions(&self) -> Vec<Rational> {
        let f = Rational::from_integer(factorial(self.order - 1));
        (0..self.order)
            .map(|i| {
                let b = Rational::from_integer(binomial(self.order - 1, i as i64));
                if i % 2 == 0 { b / &f } else { -b / &f }
            })
            .collect()
    }

    /// Period-1 BBP layout with base `1/ratio`; requires that to be an integer.
    pub fn to_bbp(&self) -> Result<BbpFormula> {
        if self.ratio.is_zero() {
            return Err(Error::Domain("ratio 0".into()));
        }
        let b = self.ratio.recip();
        if !b.is_integer() {
            return Err(Error::RegroupImpossible { reason: format!("1/ratio = {b} is not an integer"), smallest: None });
        }
        let lead = &self.factor * &self.ratio;
        let coeffs: Vec<Rational> = self.partial_fractions().into_iter().map(|e| e * &lead).collect();
        let f = Formula {
            target: self.target.clone(),
            imag_target: ConstantTag::zero(),
            r0: self.r0.clone(),
            r1: Rational::one(),
            base: b.to_integer(),
            period: 1,
            start: 0,
            offset: 1,
            coeffs,
        };
        Ok(f.collapse_wide())
    }
}

/// Result of regrouping: real when every coefficient is rational.
#[derive(Clone, Debug, PartialEq)]
pub enum Regrouped {
    Real(BbpFormula),
    Complex(GaussianBbpFormula),
}

impl Regrouped {
    pub fn real(self) -> Result<BbpFormula> {
        match self {
            Regrouped::Real(f) => Ok(f),
            Regrouped::Complex(_) => Err(Error::UnsupportedPoint("complex coefficients; split real and imaginary parts first".into())),
        }
    }

    pub fn complex(self) -> GaussianBbpFormula {
        match self {
            Regrouped::Complex(f) => f,
            Regrouped::Real(f) => Formula {
                target: f.target,
                imag_target: f.imag_target,
                r0: gauss_real(f.r0),
                r1: gauss_real(f.r1),
                base: f.base,
                period: f.period,
                start: f.start,
                offset: f.offset,
                coeffs: f.coeffs.into_iter().map(gauss_real).collect(),
            },
        }
    }
}

const REGROUP_SEARCH: usize = 64;

/// `1/x^g` when it is a nonzero integer admissible as a base.
fn base_for(x: &GaussianRational, g: usize) -> Option<BigInt> {
    let xg = gauss_pow(x, g as i64).ok()?;
    if !xg.im.is_zero() || xg.re.is_zero() {
        return None;
    }
    let b = xg.re.recip();
    b.is_integer().then(|| b.to_integer())
}

/// Groups the series modulo `m` into BBP layout (offset 1, start 0).
///
/// Residues are grouped by the least `g | m` with `(1-s)^g = 1/base`;
/// denominators are then dilated by `m/g`. Without `base`, `g = m`.
pub fn regroup(f: &SeriesForm, m: usize, base: Option<&BigInt>) -> Result<Regrouped> {
    if m == 0 {
        return Err(Error::Domain("period must be positive".into()));
    }
    let x = f.ratio();
    if x.is_zero() {
        return Err(Error::RegroupImpossible { reason: "s = 1 gives an empty series".into(), smallest: None });
    }
    let g = (1..=m).filter(|g| m.is_multiple_of(*g)).find(|&g| match (base_for(&x, g), base) {
        (Some(b), Some(want)) => &b == want,
        (Some(_), None) => g == m,
        _ => false,
    });
    let g = match g {
        Some(g) => g,
        None => {
            let smallest = (1..=REGROUP_SEARCH).find(|&g| base_for(&x, g).is_some_and(|b| base.is_none_or(|want| &b == want)));
            let reason = match base {
                Some(b) => format!("no divisor g of {m} has (1-s)^g = 1/{b}"),
                None => format!("(1-s)^{m} is not the reciprocal of an integer"),
            };
            return Err(Error::RegroupImpossible { reason, smallest });
        }
    };
    let b = base_for(&x, g).expect("checked");
    if b.abs().is_one() && !norm_sqr(&x).is_one() {
        return Err(Error::Consistency("unit base with |1-s| ≠ 1".into()));
    }
    let d = m / g;
    let n = f.n as usize;
    let nfact = gauss_real(Rational::from_integer(factorial(f.n)));
    let dd = gauss_real(Rational::from_integer(BigInt::from(d)));
    let cs = partial_fractions(f.n);
    let mut coeffs = vec![GaussianRational::zero(); d * (g + n - 1)];
    for r in 0..g {
        let w = f.r1.clone() * gauss_pow(&x, (r + n) as i64)? * dd.clone() / nfact.clone();
        for (l, c) in cs.iter().enumerate() {
            let idx = d * (r + l + 1) - 1;
            coeffs[idx] = coeffs[idx].clone() + w.clone() * gauss_real(c.clone());
        }
    }
    let raw = Formula {
        target: f.target.clone(),
        imag_target: f.imag_target.clone(),
        r0: f.r0.clone(),
        r1: GaussianRational::one(),
        base: b,
        period: m,
        start: 0,
        offset: 1,
        coeffs,
    };
    let out = raw.collapse_wide();
    Ok(match out.clone().into_real() {
        Some(real) => Regrouped::Real(real.oriented()),
        None => Regrouped::Complex(out),
    })
}
