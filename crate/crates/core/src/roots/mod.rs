//! Location of the roots of `C_n`: exact real-root counts, certified
//! complex enclosures, and the `w = x/(1+x)` picture.

mod certify;
mod sturm;

pub use certify::{aberth, certified_roots, sqrt_upper, Disk, Verdict};
pub use sturm::{cauchy_bound, count_real, isolate_real, sturm_sequence};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::logpoly::{poly_c, poly_d, QPoly};
use crate::poly::Poly;
use crate::scalar::{format_rational, Rational};

pub const DEFAULT_TOL: f64 = 1e-9;

fn isolation_width() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10_000_000))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealRoots {
    pub n: u64,
    pub count: usize,
    /// Isolating intervals of width below `1e-6`.
    pub intervals: Vec<(Rational, Rational)>,
}

pub fn real_root_count(n: u64) -> Result<RealRoots> {
    if n < 3 {
        return Err(Error::Domain("real root analysis needs n ≥ 3".into()));
    }
    let c = poly_c(n)?;
    let intervals = isolate_real(&c, &isolation_width());
    let count = count_real(&c);
    if count != intervals.len() {
        return Err(Error::Consistency(format!("Sturm count {count} but {} isolating intervals", intervals.len())));
    }
    Ok(RealRoots { n, count, intervals })
}

/// `f_n(w) = Σ_{k=1}^{n-1} w^k / k`.
pub fn w_transform(n: u64) -> Result<QPoly> {
    if n < 2 {
        return Err(Error::Domain("w transform needs n ≥ 2".into()));
    }
    let mut c = vec![Rational::zero()];
    c.extend((1..n).map(|k| Rational::new(BigInt::one(), BigInt::from(k))));
    Ok(Poly::new(c))
}

/// `Σ_{k=1}^{n-1} x^k (1+x)^{n-1-k} / k`, which equals `D_n(x)`.
pub fn pulled_back_transform(n: u64) -> Result<QPoly> {
    let f = w_transform(n)?;
    let x = Poly::monomial(Rational::one(), 1);
    let one_plus = Poly::linear(Rational::one());
    let mut acc = Poly::zero();
    for (k, c) in f.coeffs().iter().enumerate().skip(1) {
        acc = &acc + &(&x.pow(k) * &one_plus.pow(n as usize - 1 - k)).scale(c);
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnitDiskReport {
    pub n: u64,
    pub ok: bool,
    /// Enclosures of the roots of `f_n(w)/w`.
    pub roots: Vec<Disk>,
    /// `Σ_{k=2}^{n-2} 1/(k(k+1)) + 1/(n-1)`, the coefficient bound of the proof.
    pub bound_sum: Rational,
}

/// `Q(w) = f_n(w)(1-w)/w` in closed form.
fn q_closed_form(n: u64) -> QPoly {
    let mut c = vec![Rational::one()];
    for k in 1..n.saturating_sub(1) {
        c.push(-Rational::new(BigInt::one(), BigInt::from(k * (k + 1))));
    }
    c.push(-Rational::new(BigInt::one(), BigInt::from(n - 1)));
    Poly::new(c)
}

fn norm2(re: &Rational, im: &Rational) -> Rational {
    re * re + im * im
}

pub fn unit_disk_check(n: u64) -> Result<UnitDiskReport> {
    let f = w_transform(n)?;
    let g = Poly::new(f.coeffs()[1..].to_vec());
    let one_minus = Poly::new(vec![Rational::one(), -Rational::one()]);
    let q = &g * &one_minus;
    if q != q_closed_form(n) {
        return Err(Error::Consistency(format!("Q(w) for n = {n} differs from its closed form")));
    }
    if !q.eval(&Rational::one()).is_zero() {
        return Err(Error::Consistency("Q(1) ≠ 0".into()));
    }
    let bound_sum: Rational = (2..n.saturating_sub(1)).map(|k| Rational::new(BigInt::one(), BigInt::from(k * (k + 1)))).sum::<Rational>()
        + Rational::new(BigInt::one(), BigInt::from(n - 1));
    if n >= 3 && bound_sum != Rational::new(BigInt::one(), BigInt::from(2)) {
        return Err(Error::Consistency(format!("coefficient bound sums to {bound_sum}, not 1/2")));
    }
    let one = Rational::one();
    let tol = Rational::new(BigInt::one(), BigInt::from(1_000_000));
    let roots = certified_roots(&g, &tol, |disks| {
        for d in disks {
            let c2 = norm2(&d.center.re, &d.center.im);
            let out = &one + &d.radius;
            let clearly_outside = &out * &out < c2;
            let inside = d.radius < one && {
                let inner = &one - &d.radius;
                c2 <= &inner * &inner
            };
            if !clearly_outside && !inside {
                return Verdict::Refine;
            }
        }
        Verdict::Accept
    })?;
    let ok = roots.iter().all(|d| {
        let out = &one + &d.radius;
        &out * &out < norm2(&d.center.re, &d.center.im)
    });
    // a root in the closed disk would have to satisfy |w - 2| ≤ 1
    for d in roots.iter().filter(|d| {
        let inner = &one - &d.radius;
        inner.is_positive() && norm2(&d.center.re, &d.center.im) <= &inner * &inner
    }) {
        let two = Rational::from_integer(BigInt::from(2));
        let far = norm2(&(&d.center.re - &two), &d.center.im);
        let reach = &one + &d.radius;
        if far > &reach * &reach {
            return Err(Error::TheoremViolation(format!("root near {:?} inside the unit disk but far from 2", d.approx())));
        }
    }
    Ok(UnitDiskReport { n, ok, roots, bound_sum })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootReport {
    pub n: u64,
    pub degree: usize,
    pub real_root_count: usize,
    pub real_roots: Vec<(Rational, Rational)>,
    /// Enclosures of the non-real roots.
    pub complex_roots: Vec<Disk>,
    /// Every root's enclosure, real ones included.
    pub all_roots: Vec<Disk>,
    pub half_plane_ok: bool,
    pub unit_disk_ok: bool,
    /// `|x/(1+x)| > 1` and `f_n(x/(1+x)) ≈ 0` at every root.
    pub w_correspondence_ok: bool,
}

impl RootReport {
    pub fn to_json(&self) -> Value {
        let disk = |d: &Disk| {
            let z = d.approx();
            json!({"re": format!("{:.15}", z.re), "im": format!("{:.15}", z.im), "radius": format!("{:.3e}", d.radius.to_f64().unwrap_or(f64::NAN))})
        };
        json!({
            "n": self.n,
            "degree": self.degree,
            "real_root_count": self.real_root_count,
            "real_roots": self.real_roots.iter().map(|(a, b)| json!({"lower": format_rational(a), "upper": format_rational(b)})).collect::<Vec<_>>(),
            "complex_roots": self.complex_roots.iter().map(disk).collect::<Vec<_>>(),
            "half_plane_ok": self.half_plane_ok,
            "unit_disk_ok": self.unit_disk_ok,
            "w_correspondence_ok": self.w_correspondence_ok,
        })
    }
}

fn tol_rational(tol: f64) -> Result<Rational> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    Rational::from_float(tol).ok_or_else(|| Error::Domain("tolerance".into()))
}

/// `|f_n(w)|` at `w = x/(1+x)` against the first-order error from the radius.
fn w_residual_ok(n: u64, f: &QPoly, d: &Disk) -> bool {
    let x = d.approx();
    let w = x / (Complex64::one() + x);
    let coeffs: Vec<f64> = f.coeffs().iter().map(|c| c.to_f64().unwrap_or(0.0)).collect();
    let val = coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * w + c);
    let r = d.radius.to_f64().unwrap_or(f64::INFINITY).max(f64::EPSILON * x.norm().max(1.0));
    let dw = r / ((Complex64::one() + x).norm() - r).powi(2).max(1e-300);
    let slope: f64 = (1..n).map(|k| (w.norm() + dw).powi(k as i32 - 1)).sum();
    let scale: f64 = (1..n).map(|k| w.norm().powi(k as i32) / k as f64).sum();
    val.norm() <= 4.0 * slope * dw + 1e-12 * scale.max(1.0)
}

pub fn half_plane_check(n: u64, tol: f64) -> Result<RootReport> {
    if n < 3 {
        return Err(Error::Domain("half-plane check needs n ≥ 3".into()));
    }
    let tol_q = tol_rational(tol)?;
    let c = poly_c(n)?;
    if pulled_back_transform(n)? != poly_d(n)? {
        return Err(Error::Consistency(format!("w-map identity fails for n = {n}")));
    }
    let real = real_root_count(n)?;
    let half = -Rational::new(BigInt::one(), BigInt::from(2));
    let margin = &tol_q * Rational::from_integer(BigInt::from(10));
    let tiny = &tol_q / Rational::from_integer(BigInt::from(1u64 << 20));
    let disks = certified_roots(&c, &tol_q, |disks| {
        let crossing = disks.iter().filter(|d| d.crosses_real_axis()).count();
        if crossing != real.count {
            return Verdict::Refine;
        }
        for d in disks {
            let right = &d.center.re + &d.radius;
            let left = &d.center.re - &d.radius;
            if left > half {
                return Verdict::Reject(Error::TheoremViolation(format!(
                    "root of C_{n} near {:.6} + {:.6}i lies in Re x > -1/2",
                    d.approx().re,
                    d.approx().im
                )));
            }
            if right >= half {
                return Verdict::Refine;
            }
            if &half - &right < margin && d.radius > tiny {
                return Verdict::Refine;
            }
        }
        Verdict::Accept
    })?;
    let f = w_transform(n)?;
    let w_ok = disks.iter().all(|d| w_residual_ok(n, &f, d));
    let half_plane_ok = disks.iter().all(|d| &d.center.re + &d.radius < half);
    let unit = unit_disk_check(n)?;
    let complex_roots = disks.iter().filter(|d| !d.crosses_real_axis()).cloned().collect();
    Ok(RootReport {
        n,
        degree: c.degree().unwrap_or(0),
        real_root_count: real.count,
        real_roots: real.intervals,
        complex_roots,
        all_roots: disks,
        half_plane_ok,
        unit_disk_ok: unit.ok,
        w_correspondence_ok: w_ok && half_plane_ok,
    })
}

/// Roots of `B_n`: `s = 1` and `s = x + 1` for the roots `x` of `C_n`;
/// true when all of the latter satisfy `Re s < 1/2`.
pub fn b_roots_in_half_plane(report: &RootReport) -> bool {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    report.all_roots.iter().all(|d| &d.center.re + Rational::one() + &d.radius < half)
}

#[cfg(test)]
mod tests;
