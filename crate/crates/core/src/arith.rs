//! Exact integer and rational helpers: harmonic numbers, binomials, factorials
//! and Gaussian-rational powers.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Rational};

/// `H_n = 1 + 1/2 + … + 1/n`, with `H_0 = 0`.
pub fn harmonic(n: u64) -> Rational {
    (1..=n).fold(Rational::zero(), |acc, k| acc + Rational::new(BigInt::one(), BigInt::from(k)))
}

/// All of `H_0..=H_n` in one pass.
pub fn harmonic_table(n: u64) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut h = Rational::zero();
    out.push(h.clone());
    for k in 1..=n {
        h += Rational::new(BigInt::one(), BigInt::from(k));
        out.push(h.clone());
    }
    out
}

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn sign_pow(k: u64) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Exact `z^k` by binary powering; negative exponents invert first.
pub fn gauss_pow(z: &GaussianRational, k: i64) -> Result<GaussianRational> {
    if k < 0 {
        if z.re.is_zero() && z.im.is_zero() {
            return Err(Error::Domain("zero base with negative exponent".into()));
        }
        let inv = gauss_inv(z);
        return gauss_pow(&inv, -k);
    }
    let mut base = z.clone();
    let mut e = k as u64;
    let mut acc = Complex::new(Rational::one(), Rational::zero());
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    Ok(acc)
}

pub fn gauss_inv(z: &GaussianRational) -> GaussianRational {
    let n = &z.re * &z.re + &z.im * &z.im;
    Complex::new(&z.re / &n, -&z.im / &n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gauss, int, rat};
    use proptest::prelude::*;

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0), int(0));
        assert_eq!(harmonic(1), int(1));
        // 1 + 1/2 + 1/3 + 1/4 + 1/5 summed by hand over 60
        let oracle = rat(60 + 30 + 20 + 15 + 12, 60);
        assert_eq!(harmonic(5), oracle);
        assert_eq!(harmonic(5), rat(137, 60));
        assert_eq!(harmonic_table(5)[5], harmonic(5));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(7, 0), BigInt::from(1));
        assert_eq!(binomial(10, 11), BigInt::from(0));
        assert_eq!(binomial(10, -1), BigInt::from(0));
        assert_eq!(binomial(0, 0), BigInt::from(1));
    }

    #[test]
    fn gauss_pow_values() {
        let one_minus_i = gauss(int(1), int(-1));
        // (1-i)(1-i) = 1 - 2i + i² = -2i
        assert_eq!(gauss_pow(&one_minus_i, 2).unwrap(), gauss(int(0), int(-2)));
        assert_eq!(gauss_pow(&one_minus_i, 0).unwrap(), gauss(int(1), int(0)));
        let half = gauss(rat(1, 2), rat(-1, 2));
        let mut direct = gauss(int(1), int(0));
        for _ in 0..8 {
            direct = &direct * &half;
        }
        assert_eq!(direct, gauss(rat(1, 16), int(0)));
        assert_eq!(gauss_pow(&half, 8).unwrap(), direct);
        assert_eq!(gauss_pow(&half, -8).unwrap(), gauss(int(16), int(0)));
        assert!(gauss_pow(&gauss(int(0), int(0)), -1).is_err());
    }

    #[test]
    fn binomial_harmonic_sums() {
        let h = harmonic_table(60);
        for n in 1..=60u64 {
            let s: Rational = (0..=n)
                .map(|k| Rational::from_integer(binomial(n, k as i64) * sign_pow(k)) * &h[(n - k) as usize])
                .sum();
            assert_eq!(s, rat(-sign_pow(n), n as i64), "n = {n}");
        }
        for n in 2..=60u64 {
            let s: Rational = (0..=n)
                .map(|k| Rational::from_integer(binomial(n, k as i64) * k * sign_pow(k)) * &h[(n - k) as usize])
                .sum();
            assert_eq!(s, rat(sign_pow(n - 1) * n as i64, n as i64 - 1), "n = {n}");
        }
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a - &a, int(0));
            if !a.is_zero() {
                prop_assert_eq!(&a * a.recip(), int(1));
            }
            prop_assert!(*a.denom() > BigInt::zero());
        }

        #[test]
        fn harmonic_difference(n in 1u64..200) {
            prop_assert_eq!(harmonic(n) - harmonic(n - 1), rat(1, n as i64));
        }

        #[test]
        fn gauss_pow_adds_exponents(re in small_rat(), im in small_rat(), a in -6i64..6, b in -6i64..6) {
            let z = gauss(re, im);
            prop_assume!(!(z.re.is_zero() && z.im.is_zero()));
            let lhs = gauss_pow(&z, a + b).unwrap();
            let rhs = gauss_pow(&z, a).unwrap() * gauss_pow(&z, b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
