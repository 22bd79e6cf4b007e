//! BBP-like formulas `target = r0 + r1 Σ_{k≥start} base^{-k} Σ_i a_i/(k·period + offset + i)`.
//!
//! Terms whose denominator vanishes (only possible with `offset = 0`, `k = 0`,
//! `i = 0`) are omitted, which lets displays such as `2/(8k)` start at `k = 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::factor::perfect_power;
use crate::scalar::{GaussianRational, Rational, Scalar};
use crate::tag::ConstantTag;

#[derive(Clone, Debug, PartialEq)]
pub struct Formula<T> {
    /// Real part of the represented constant.
    pub target: ConstantTag,
    /// Imaginary part; zero for real formulas.
    pub imag_target: ConstantTag,
    pub r0: T,
    pub r1: T,
    pub base: BigInt,
    pub period: usize,
    pub start: u64,
    pub offset: u32,
    pub coeffs: Vec<T>,
}

pub type BbpFormula = Formula<Rational>;
pub type GaussianBbpFormula = Formula<GaussianRational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convergence {
    /// `|base| ≥ 2`.
    Geometric,
    /// `base = 1` with a vanishing coefficient sum: terms decay like `1/k²`.
    Slow,
    /// `base = -1`: alternating; only conditionally convergent.
    Conditional,
    /// `base = 1` with a nonzero coefficient sum.
    Divergent,
}

/// Efficiency `m̄ / log₂|b|`.
#[derive(Clone, Debug, PartialEq)]
pub enum Efficiency {
    Exact(Rational),
    Real { nonzero: usize, base: BigInt, value: f64 },
}

impl Efficiency {
    pub fn value(&self) -> f64 {
        match self {
            Efficiency::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Efficiency::Real { value, .. } => *value,
        }
    }
}

fn lift<T: Scalar + From<Rational>>(r: Rational) -> T {
    T::from(r)
}

fn pow_big(b: &BigInt, k: u64) -> BigInt {
    num_traits::pow(b.clone(), k as usize)
}

impl<T: Scalar + From<Rational>> Formula<T> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        target: ConstantTag,
        r0: T,
        r1: T,
        base: BigInt,
        period: usize,
        start: u64,
        offset: u32,
        coeffs: Vec<T>,
    ) -> Result<Self> {
        let f = Formula { target, imag_target: ConstantTag::zero(), r0, r1, base, period, start, offset, coeffs };
        f.check()?;
        Ok(f)
    }

    pub fn check(&self) -> Result<()> {
        if self.base.is_zero() {
            return Err(Error::Domain("base must be nonzero".into()));
        }
        if self.period == 0 {
            return Err(Error::Domain("period must be positive".into()));
        }
        if self.coeffs.len() != self.period {
            return Err(Error::Domain(format!(
                "expected {} coefficients, got {}",
                self.period,
                self.coeffs.len()
            )));
        }
        if self.offset > 1 {
            return Err(Error::Domain("offset must be 0 or 1".into()));
        }
        Ok(())
    }

    pub fn degree(&self) -> u32 {
        1
    }

    pub fn convergence(&self) -> Convergence {
        if self.base.abs() >= BigInt::from(2) {
            Convergence::Geometric
        } else if self.base.is_negative() {
            Convergence::Conditional
        } else if self.coeffs.iter().fold(T::zero(), |a, c| a + c.clone()).is_zero() {
            Convergence::Slow
        } else {
            Convergence::Divergent
        }
    }

    /// `r1·a_i`, with `r1` then equal to one.
    pub fn effective(&self) -> Self {
        let mut f = self.clone();
        f.coeffs = self.coeffs.iter().map(|c| c.clone() * self.r1.clone()).collect();
        f.r1 = T::one();
        f
    }

    fn denominator(&self, k: u64, i: usize) -> BigInt {
        BigInt::from(k) * BigInt::from(self.period) + BigInt::from(self.offset) + BigInt::from(i)
    }

    /// `r1 · base^{-k} Σ_i a_i/(k·period + offset + i)`: the `k`-th block.
    pub fn block(&self, k: u64) -> T {
        let bk = Rational::from_integer(pow_big(&self.base, k));
        let mut acc = T::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let d = self.denominator(k, i);
            if d.is_zero() || c.is_zero() {
                continue;
            }
            acc = acc + c.clone() * lift::<T>(Rational::new(BigInt::one(), d) / &bk);
        }
        acc * self.r1.clone()
    }

    /// Same value, presented with the given offset and starting index.
    pub fn relayout(&self, offset: u32, start: u64) -> Self {
        let mut f = self.effective();
        for k in 0..f.start {
            f.r0 = f.r0.clone() - f.block(k);
        }
        f.start = 0;
        let b = lift::<T>(Rational::from_integer(f.base.clone()));
        let m = f.period;
        match (f.offset, offset) {
            (0, 1) => {
                let c0 = f.coeffs.remove(0);
                f.coeffs.push(c0 / b);
            }
            (1, 0) => {
                let am = f.coeffs.pop().expect("period ≥ 1");
                f.coeffs.insert(0, am * b);
            }
            _ => {}
        }
        debug_assert_eq!(f.coeffs.len(), m);
        f.offset = offset;
        for k in 0..start {
            f.r0 = f.r0.clone() + f.block(k);
        }
        f.start = start;
        f
    }

    /// Canonical layout: offset 1, start 0, `r1 = 1`.
    pub fn canonical(&self) -> Self {
        self.relayout(1, 0)
    }

    /// Value equality of presentations: identical after [`Formula::canonical`].
    pub fn equivalent(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    /// Folds coefficients beyond the period into the following block.
    pub(crate) fn collapse_wide(mut self) -> Self {
        debug_assert!(self.r1.is_one());
        let m = self.period;
        let b = lift::<T>(Rational::from_integer(self.base.clone()));
        let b_start = Rational::from_integer(pow_big(&self.base, self.start));
        while self.coeffs.len() > m {
            let moved: Vec<T> = self.coeffs.drain(m..).collect();
            for (j, c) in moved.into_iter().enumerate() {
                let val = c * b.clone();
                let d = self.denominator(self.start, j);
                if !d.is_zero() {
                    self.r0 = self.r0.clone() - val.clone() * lift::<T>(Rational::new(BigInt::one(), d) / &b_start);
                }
                if j < self.coeffs.len() {
                    self.coeffs[j] = self.coeffs[j].clone() + val;
                } else {
                    self.coeffs.push(val);
                }
            }
        }
        self.coeffs.resize(m, T::zero());
        self
    }

    /// Groups `t` consecutive blocks (base becomes `base^t`) and scales every
    /// denominator by `d` (period becomes `t·period·d`). Expects canonical layout.
    pub(crate) fn upgrade(&self, t: usize, d: usize) -> Self {
        debug_assert!(self.offset == 1 && self.start == 0 && self.r1.is_one());
        let m = self.period;
        let new_period = t * m * d;
        let mut coeffs = vec![T::zero(); new_period];
        let dd = lift::<T>(Rational::from_integer(BigInt::from(d)));
        for r in 0..t {
            let w = lift::<T>(Rational::new(BigInt::one(), pow_big(&self.base, r as u64)));
            for (i, c) in self.coeffs.iter().enumerate() {
                let idx = d * (r * m + i + 1) - 1;
                coeffs[idx] = coeffs[idx].clone() + c.clone() * w.clone() * dd.clone();
            }
        }
        Formula {
            base: pow_big(&self.base, t as u64),
            period: new_period,
            coeffs,
            ..self.clone()
        }
    }

    /// Scales the whole identity by `c` (value and target alike).
    pub fn scaled(&self, c: &Rational) -> Self {
        let cl = lift::<T>(c.clone());
        Formula {
            target: self.target.scale(c),
            imag_target: self.imag_target.scale(c),
            r0: self.r0.clone() * cl.clone(),
            r1: self.r1.clone() * cl,
            ..self.clone()
        }
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn efficiency(&self) -> Result<Efficiency> {
        let b = self.base.abs();
        if b < BigInt::from(2) {
            return Err(Error::Domain("efficiency needs |base| ≥ 2".into()));
        }
        let nonzero = self.nonzero_count();
        let bu = b.to_biguint().expect("positive");
        let (root, exp) = perfect_power(&bu);
        if root == 2u32.into() {
            return Ok(Efficiency::Exact(Rational::new(BigInt::from(nonzero), BigInt::from(exp))));
        }
        let log2 = b.bits() as f64 - 1.0 + {
            let top = (&b >> (b.bits().saturating_sub(53))).to_f64().unwrap_or(1.0);
            (top / 2f64.powi(top.log2().floor() as i32)).log2()
        };
        Ok(Efficiency::Real { nonzero, base: b, value: nonzero as f64 / log2 })
    }
}

impl Formula<Rational> {
    /// Integer coefficients with no common factor; the scale moves into `r1`.
    pub fn integerized(&self) -> Self {
        let f = self.effective();
        let nonzero: Vec<&Rational> = f.coeffs.iter().filter(|c| !c.is_zero()).collect();
        if nonzero.is_empty() {
            return f;
        }
        let l = nonzero.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let g = nonzero.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
        let scale = Rational::new(l, g);
        Formula {
            coeffs: f.coeffs.iter().map(|c| c * &scale).collect(),
            r1: scale.recip(),
            ..f
        }
    }

    /// Start index 0 with leading blocks folded into `r0`, integer
    /// coefficients with the scale in `r1`; offset and base sign are kept.
    pub fn normalize(&self) -> Self {
        self.relayout(self.offset, 0).integerized()
    }

    /// Divides by the coefficient of a single-atom target so that e.g.
    /// `-log 2` becomes `log 2` and `π/4` becomes `π`. The result has `r1 = 1`.
    pub fn oriented(&self) -> Self {
        let c = self.target.orientation();
        self.scaled(&c.recip()).effective()
    }

    /// Base `b²` with doubled period when `b < 0`.
    pub fn to_positive_base(&self) -> Self {
        if !self.base.is_negative() {
            return self.clone();
        }
        let f = self.canonical();
        f.upgrade(2, 1)
    }
}

impl Formula<GaussianRational> {
    pub fn is_real(&self) -> bool {
        self.r0.im.is_zero() && self.r1.im.is_zero() && self.coeffs.iter().all(|c| c.im.is_zero()) && self.imag_target.is_zero()
    }

    fn part(&self, re: bool, target: ConstantTag) -> BbpFormula {
        let f = self.effective();
        let pick = |z: &GaussianRational| if re { z.re.clone() } else { z.im.clone() };
        Formula {
            target,
            imag_target: ConstantTag::zero(),
            r0: pick(&f.r0),
            r1: Rational::one(),
            base: f.base.clone(),
            period: f.period,
            start: f.start,
            offset: f.offset,
            coeffs: f.coeffs.iter().map(pick).collect(),
        }
    }

    pub fn real_part(&self) -> BbpFormula {
        self.part(true, self.target.clone())
    }

    pub fn imag_part(&self) -> BbpFormula {
        self.part(false, self.imag_target.clone())
    }

    pub fn into_real(self) -> Option<BbpFormula> {
        self.is_real().then(|| self.real_part())
    }
}

/// Real and imaginary formulas of a complex one, each oriented to its atom.
pub fn split_re_im(f: &GaussianBbpFormula) -> Result<(BbpFormula, BbpFormula)> {
    if f.base.is_zero() {
        return Err(Error::Domain("base must be nonzero".into()));
    }
    Ok((f.real_part().oriented(), f.imag_part().oriented()))
}

/// Exact linear combination over a common base and period.
pub fn combine<T: Scalar + From<Rational>>(terms: &[(Rational, Formula<T>)]) -> Result<Formula<T>> {
    if terms.is_empty() {
        return Err(Error::CombineImpossible("no operands".into()));
    }
    let canon: Vec<(Rational, Formula<T>)> = terms.iter().map(|(c, f)| (c.clone(), f.canonical())).collect();

    // common base: every |b| must be a power of one root
    let unit = canon.iter().map(|(_, f)| f.base.abs().is_one()).collect::<Vec<_>>();
    let mut t: Vec<usize>;
    if unit.iter().all(|u| *u) {
        t = vec![1; canon.len()];
    } else if unit.iter().any(|u| *u) {
        return Err(Error::CombineImpossible("cannot mix |base| = 1 with geometric bases".into()));
    } else {
        let powers: Vec<_> =
            canon.iter().map(|(_, f)| perfect_power(&f.base.abs().to_biguint().expect("positive"))).collect();
        let root = &powers[0].0;
        if powers.iter().any(|(r, _)| r != root) {
            let bases: Vec<String> = canon.iter().map(|(_, f)| f.base.to_string()).collect();
            return Err(Error::CombineImpossible(format!("bases {} have no common power", bases.join(", "))));
        }
        let l = powers.iter().fold(1u32, |acc, (_, e)| acc.lcm(e));
        t = powers.iter().map(|(_, e)| (l / e) as usize).collect();
    }
    let sign_of = |f: &Formula<T>, t: usize| f.base.is_negative() && t % 2 == 1;
    let signs: Vec<bool> = canon.iter().zip(&t).map(|((_, f), &ti)| sign_of(f, ti)).collect();
    if signs.iter().any(|s| *s != signs[0]) {
        t.iter_mut().for_each(|ti| *ti *= 2);
    }
    let periods: Vec<usize> = canon.iter().zip(&t).map(|((_, f), &ti)| f.period * ti).collect();
    let period = periods.iter().fold(1usize, |acc, p| acc.lcm(p));

    let mut out: Option<Formula<T>> = None;
    for (((c, f), &ti), &p) in canon.iter().zip(&t).zip(&periods) {
        let up = f.upgrade(ti, period / p).scaled(c).effective();
        out = Some(match out {
            None => up,
            Some(acc) => {
                debug_assert_eq!(acc.base, up.base);
                Formula {
                    target: &acc.target + &up.target,
                    imag_target: &acc.imag_target + &up.imag_target,
                    r0: acc.r0 + up.r0,
                    r1: T::one(),
                    coeffs: acc.coeffs.into_iter().zip(up.coeffs).map(|(a, b)| a + b).collect(),
                    ..acc
                }
            }
        });
    }
    let mut out = out.expect("at least one operand").effective();
    out.start = 0;
    out.offset = 1;
    Ok(out)
}
