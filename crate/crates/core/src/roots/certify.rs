//! Complex root enclosures: Aberth iteration in `f64`, then exact
//! Weierstrass corrections on dyadic points.
//!
//! With `W_i = p(z_i) / (a_d Π_{j≠i} (z_i - z_j))`, the disks
//! `|z - z_i| ≤ d·|W_i|` cover the roots, and a component made of `k`
//! disks holds exactly `k` roots. Pairwise disjoint disks are therefore
//! certified to hold one root each.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::logpoly::QPoly;
use crate::scalar::{GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct Disk {
    pub center: GaussianRational,
    /// Upper bound on the distance from `center` to the enclosed root.
    pub radius: Rational,
}

impl Disk {
    pub fn approx(&self) -> Complex64 {
        Complex64::new(self.center.re.to_f64().unwrap_or(f64::NAN), self.center.im.to_f64().unwrap_or(f64::NAN))
    }

    pub fn crosses_real_axis(&self) -> bool {
        self.center.im.abs() <= self.radius
    }

    fn disjoint(&self, o: &Disk) -> bool {
        let d = &self.center - &o.center;
        let dist2 = &d.re * &d.re + &d.im * &d.im;
        let r = &self.radius + &o.radius;
        r.clone() * r < dist2
    }
}

/// Roots of a polynomial with `f64` coefficients by Aberth–Ehrlich iteration.
pub fn aberth(coeffs: &[f64]) -> Vec<Complex64> {
    let d = coeffs.len().saturating_sub(1);
    if d == 0 {
        return vec![];
    }
    let lead = coeffs[d];
    let radius = coeffs[..d].iter().map(|c| (c / lead).abs()).fold(0.0f64, f64::max).max(1e-3).powf(1.0 / d as f64);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / d as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for c in coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..2000 {
        let mut biggest = 0.0f64;
        for i in 0..d {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..d).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::one() - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                biggest = biggest.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if biggest < 1e-15 {
            break;
        }
    }
    z
}

fn round_dyadic(x: &Rational, p: u32) -> Rational {
    let scale = Rational::from_integer(BigInt::one() << p as usize);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    Rational::new((x * &scale + half).floor().to_integer(), BigInt::one() << p as usize)
}

fn round_gauss(z: &GaussianRational, p: u32) -> GaussianRational {
    GaussianRational::new(round_dyadic(&z.re, p), round_dyadic(&z.im, p))
}

/// A rational `r ≥ √x`, tight to about 1e-12 relative.
pub fn sqrt_upper(x: &Rational) -> Rational {
    if !x.is_positive() {
        return Rational::zero();
    }
    // scale by 4^s into f64 range
    let s = (x.denom().bits() as i64 - x.numer().bits() as i64) / 2;
    let pow = |e: i64| {
        if e >= 0 {
            Rational::from_integer(BigInt::one() << e as usize)
        } else {
            Rational::new(BigInt::one(), BigInt::one() << (-e) as usize)
        }
    };
    let y = x * pow(2 * s);
    let guess = y.to_f64().unwrap_or(1.0).sqrt() * (1.0 + 1e-12) + f64::MIN_POSITIVE;
    let mut r = Rational::from_float(guess).unwrap_or_else(Rational::one);
    while &r * &r < y {
        r *= Rational::new(BigInt::from(1025), BigInt::from(1024));
    }
    r * pow(-s)
}

fn norm2(z: &GaussianRational) -> Rational {
    &z.re * &z.re + &z.im * &z.im
}

/// Disks and the Weierstrass step at the given centers.
fn weierstrass(p: &[GaussianRational], z: &[GaussianRational]) -> (Vec<Disk>, Vec<GaussianRational>) {
    let d = z.len();
    let lead = p[d].clone();
    let deg = Rational::from_integer(BigInt::from(d));
    let mut disks = Vec::with_capacity(d);
    let mut corr = Vec::with_capacity(d);
    for i in 0..d {
        let mut val = GaussianRational::zero();
        for c in p.iter().rev() {
            val = val * &z[i] + c;
        }
        let mut den = lead.clone();
        for j in 0..d {
            if j != i {
                den *= &z[i] - &z[j];
            }
        }
        if den.is_zero() {
            disks.push(Disk { center: z[i].clone(), radius: Rational::from_integer(BigInt::from(1) << 64usize) });
            corr.push(GaussianRational::zero());
            continue;
        }
        let w = val / den;
        let radius = &deg * sqrt_upper(&norm2(&w));
        disks.push(Disk { center: z[i].clone(), radius });
        corr.push(w);
    }
    (disks, corr)
}

/// Certification outcome for a caller-supplied acceptance predicate.
pub enum Verdict {
    Accept,
    Refine,
    Reject(Error),
}

const MAX_BITS: u32 = 4096;
const MAX_STEPS: usize = 200;

/// Pairwise-disjoint disks, one per root, each of radius at most `tol`, and
/// accepted by `judge`; precision escalates until `judge` stops asking for
/// refinement.
pub fn certified_roots(poly: &QPoly, tol: &Rational, judge: impl Fn(&[Disk]) -> Verdict) -> Result<Vec<Disk>> {
    let d = match poly.degree() {
        None | Some(0) => return Ok(vec![]),
        Some(d) => d,
    };
    let p: Vec<GaussianRational> = poly.coeffs().iter().map(|c| GaussianRational::new(c.clone(), Rational::zero())).collect();
    let approx = aberth(&poly.coeffs().iter().map(|c| c.to_f64().unwrap_or(0.0)).collect::<Vec<_>>());
    let mut bits = 64u32;
    let mut z: Vec<GaussianRational> = approx
        .iter()
        .map(|c| {
            GaussianRational::new(
                round_dyadic(&Rational::from_float(c.re).unwrap_or_default(), bits),
                round_dyadic(&Rational::from_float(c.im).unwrap_or_default(), bits),
            )
        })
        .collect();
    let mut target = tol.clone();
    debug_assert_eq!(z.len(), d);
    for _ in 0..MAX_STEPS {
        let (disks, corr) = weierstrass(&p, &z);
        let disjoint = (0..d).all(|i| (i + 1..d).all(|j| disks[i].disjoint(&disks[j])));
        let small = disks.iter().all(|c| c.radius <= target);
        if disjoint && small {
            match judge(&disks) {
                Verdict::Accept => return Ok(disks),
                Verdict::Reject(e) => return Err(e),
                Verdict::Refine => target /= Rational::from_integer(BigInt::from(1u64 << 20)),
            }
        }
        let worst = disks.iter().map(|c| c.radius.clone()).max().unwrap_or_default();
        // radii shrink quadratically until the rounding floor is reached
        if worst < Rational::new(BigInt::one(), BigInt::one() << (bits as usize / 2)) {
            bits *= 2;
        }
        if bits > MAX_BITS {
            return Err(Error::Inconclusive(format!("root enclosures of a degree-{d} polynomial did not separate at {MAX_BITS} bits")));
        }
        z = z.iter().zip(&corr).map(|(zi, wi)| round_gauss(&(zi - wi), bits)).collect();
    }
    Err(Error::Inconclusive(format!("root enclosures of a degree-{d} polynomial did not converge in {MAX_STEPS} steps")))
}
