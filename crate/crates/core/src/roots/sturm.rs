//! Exact real-root counting and isolation.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::logpoly::QPoly;
use crate::scalar::Rational;

pub fn sturm_sequence(p: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![primitive(p)];
    if p.degree().unwrap_or(0) == 0 {
        return seq;
    }
    seq.push(primitive(&p.derivative()));
    loop {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            return seq;
        }
        seq.push(primitive(&-&r));
    }
}

/// Positive multiple with coprime integer coefficients; signs are unchanged.
fn primitive(p: &QPoly) -> QPoly {
    use num_integer::Integer;
    let l = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let g = p.coeffs().iter().fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()));
    if g.is_zero() {
        return p.clone();
    }
    p.scale(&Rational::new(l, g))
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs.filter(|s| *s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn changes_at(seq: &[QPoly], x: &Rational) -> usize {
    sign_changes(seq.iter().map(|q| sign(&q.eval(x))))
}

/// Sign changes at `+∞` (`positive`) or `-∞`.
fn changes_at_infinity(seq: &[QPoly], positive: bool) -> usize {
    sign_changes(seq.iter().map(|q| match (q.leading(), q.degree()) {
        (Some(c), Some(d)) => {
            let s = sign(c);
            if positive || d % 2 == 0 { s } else { -s }
        }
        _ => 0,
    }))
}

/// Distinct real roots of `p`.
pub fn count_real(p: &QPoly) -> usize {
    let seq = sturm_sequence(p);
    changes_at_infinity(&seq, false) - changes_at_infinity(&seq, true)
}

/// Distinct roots in `(a, b]`.
pub fn count_between(seq: &[QPoly], a: &Rational, b: &Rational) -> usize {
    changes_at(seq, a) - changes_at(seq, b)
}

/// `1 + max |a_i / a_d|`: every root lies strictly inside.
pub fn cauchy_bound(p: &QPoly) -> Rational {
    let lead = p.leading().cloned().unwrap_or_else(Rational::one);
    let m = p.coeffs()[..p.coeffs().len().saturating_sub(1)].iter().map(|c| (c / &lead).abs()).max().unwrap_or_default();
    Rational::one() + m
}

/// Disjoint intervals `[lo, hi]` each holding one real root, of width below `width`.
pub fn isolate_real(p: &QPoly, width: &Rational) -> Vec<(Rational, Rational)> {
    if p.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let seq = sturm_sequence(p);
    let b = cauchy_bound(p);
    let two = Rational::from_integer(BigInt::from(2));
    let mut stack = vec![(-b.clone(), b)];
    let mut out = vec![];
    while let Some((lo, hi)) = stack.pop() {
        let n = count_between(&seq, &lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(refine(&seq, lo, hi, width));
            continue;
        }
        let mid = (&lo + &hi) / &two;
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort();
    out
}

/// Bisects `(lo, hi]` holding one root down to `width`.
fn refine(seq: &[QPoly], mut lo: Rational, mut hi: Rational, width: &Rational) -> (Rational, Rational) {
    let two = Rational::from_integer(BigInt::from(2));
    while &(&hi - &lo) >= width {
        let mid = (&lo + &hi) / &two;
        if count_between(seq, &lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}
