//! Integer factorization (trial division + Pollard–Brent), perfect powers, and
//! Gaussian-integer factorization into canonical primes.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const SMALL_PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub fn is_prime(n: &BigUint) -> bool {
    if *n < BigUint::from(2u32) {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for &a in &SMALL_PRIMES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint, c: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = one.clone();
    let mut g = one.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    let m = 64;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if g == *n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g > one {
                break;
            }
        }
    }
    (g != *n).then_some(g)
}

fn split_into(n: BigUint, out: &mut BTreeMap<BigUint, u32>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    for c in 1..64 {
        if let Some(d) = pollard_brent(&n, c) {
            let rest = &n / &d;
            split_into(d, out);
            split_into(rest, out);
            return;
        }
    }
    // give up: record the cofactor as if it were prime
    *out.entry(n).or_insert(0) += 1;
}

/// Prime factorization of `n ≥ 1` as `prime → exponent`.
pub fn factorize(n: &BigUint) -> BTreeMap<BigUint, u32> {
    let mut out = BTreeMap::new();
    let mut n = n.clone();
    if n.is_zero() {
        return out;
    }
    let mut p = 2u32;
    while p < 1000 {
        let bp = BigUint::from(p);
        if &bp * &bp > n {
            break;
        }
        while (&n % &bp).is_zero() {
            n /= &bp;
            *out.entry(bp.clone()).or_insert(0) += 1;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigUint::one() {
        split_into(n, &mut out);
    }
    out
}

/// Writes `n = root^exp` with `exp` maximal.
pub fn perfect_power(n: &BigUint) -> (BigUint, u32) {
    if *n <= BigUint::one() {
        return (n.clone(), 1);
    }
    let bits = n.bits() as u32;
    for e in (2..=bits).rev() {
        let r = n.nth_root(e);
        if r.pow(e) == *n {
            let (rr, ee) = perfect_power(&r);
            return (rr, ee * e);
        }
    }
    (n.clone(), 1)
}

/// A Gaussian integer `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt { re: re.into(), im: im.into() }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn mul(&self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    pub fn conj(&self) -> GaussInt {
        GaussInt { re: self.re.clone(), im: -&self.im }
    }

    /// Exact quotient if `d` divides `self`.
    pub fn div_exact(&self, d: &GaussInt) -> Option<GaussInt> {
        let n = d.norm();
        let num = self.mul(&d.conj());
        if (&num.re % &n).is_zero() && (&num.im % &n).is_zero() {
            Some(GaussInt { re: num.re / &n, im: num.im / n })
        } else {
            None
        }
    }

    /// Multiplies by `i^k`.
    pub fn rotate(&self, k: u32) -> GaussInt {
        let mut z = self.clone();
        for _ in 0..k % 4 {
            z = GaussInt { re: -&z.im, im: z.re.clone() };
        }
        z
    }
}

/// `x` with `x² ≡ -1 (mod p)` for a prime `p ≡ 1 (mod 4)`.
fn sqrt_minus_one(p: &BigUint) -> BigUint {
    let e = (p - 1u32) >> 2;
    let pm1 = p - 1u32;
    let mut t = BigUint::from(2u32);
    loop {
        let x = t.modpow(&e, p);
        if (&x * &x) % p == pm1 {
            return x;
        }
        t += 1u32;
    }
}

/// For a prime `p ≡ 1 (mod 4)`, the Gaussian prime `a + bi` with `a > b > 0`
/// and `a² + b² = p`.
pub fn split_prime(p: &BigUint) -> GaussInt {
    let x = sqrt_minus_one(p);
    let bound = p.sqrt();
    let (mut a, mut b) = (p.clone(), x);
    while b > bound {
        let r = &a % &b;
        a = b;
        b = r;
    }
    let c = b.clone();
    let d = (p - &c * &c).sqrt();
    let (hi, lo) = if c > d { (c, d) } else { (d, c) };
    GaussInt::new(BigInt::from_biguint(Sign::Plus, hi), BigInt::from_biguint(Sign::Plus, lo))
}

/// Factorization `z = i^unit · (1+i)^e · Π q^{k} · Π π^{e} · Π conj(π)^{f}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GaussFactorization {
    /// exponent `u` of the unit `i^u`
    pub unit: u32,
    pub two: u32,
    /// rational primes `≡ 3 (mod 4)` with their exponent as Gaussian primes
    pub inert: BTreeMap<BigUint, u32>,
    /// split primes keyed by `a + bi` (a > b > 0): (exponent of π, exponent of conj π)
    pub split: BTreeMap<GaussInt, (u32, u32)>,
}

pub fn factor_gauss(z: &GaussInt) -> GaussFactorization {
    assert!(!z.norm().is_zero(), "cannot factor zero");
    let mut out = GaussFactorization::default();
    let mut rest = z.clone();
    let norm = z.norm().to_biguint().expect("norm is nonnegative");
    let one_plus_i = GaussInt::new(1, 1);
    for (p, _) in factorize(&norm) {
        if p == BigUint::from(2u32) {
            while let Some(q) = rest.div_exact(&one_plus_i) {
                rest = q;
                out.two += 1;
            }
        } else if (&p % 4u32).to_u32() == Some(3) {
            let gp = GaussInt::new(BigInt::from(p.clone()), 0);
            while let Some(q) = rest.div_exact(&gp) {
                rest = q;
                *out.inert.entry(p.clone()).or_insert(0) += 1;
            }
        } else {
            let pi = split_prime(&p);
            let pc = pi.conj();
            let mut e = (0, 0);
            while let Some(q) = rest.div_exact(&pi) {
                rest = q;
                e.0 += 1;
            }
            while let Some(q) = rest.div_exact(&pc) {
                rest = q;
                e.1 += 1;
            }
            out.split.insert(pi, e);
        }
    }
    out.unit = match (rest.re.sign(), rest.im.sign()) {
        (Sign::Plus, _) => 0,
        (_, Sign::Plus) => 1,
        (Sign::Minus, _) => 2,
        _ => 3,
    };
    debug_assert!(rest.norm().is_one() && rest.re.abs() + rest.im.abs() == BigInt::one());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u128) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn factors_mersenne_and_fermat_like_numbers() {
        let f = factorize(&b((1u128 << 11) - 1));
        assert_eq!(f, BTreeMap::from([(b(23), 1), (b(89), 1)]));
        let f = factorize(&b((1u128 << 64) + 1));
        assert_eq!(f, BTreeMap::from([(b(274177), 1), (b(67280421310721), 1)]));
        assert!(is_prime(&b((1u128 << 61) - 1)));
        assert_eq!(factorize(&b(1)), BTreeMap::new());
        assert_eq!(factorize(&b(360)), BTreeMap::from([(b(2), 3), (b(3), 2), (b(5), 1)]));
    }

    #[test]
    fn perfect_powers() {
        assert_eq!(perfect_power(&b(1024)), (b(2), 10));
        assert_eq!(perfect_power(&b(64)), (b(2), 6));
        assert_eq!(perfect_power(&b(36)), (b(6), 2));
        assert_eq!(perfect_power(&b(12)), (b(12), 1));
    }

    #[test]
    fn gaussian_factorization_of_seven_plus_i() {
        // 7 + i = (1 - i)(2 + i)^2 = -i (1+i) (2+i)^2
        let f = factor_gauss(&GaussInt::new(7, 1));
        assert_eq!(f.two, 1);
        assert_eq!(f.split.get(&GaussInt::new(2, 1)), Some(&(2, 0)));
        assert_eq!(f.unit, 3);
        assert_eq!(split_prime(&b(13)), GaussInt::new(3, 2));
        let f = factor_gauss(&GaussInt::new(0, 3));
        assert_eq!((f.unit, f.inert.get(&b(3))), (1, Some(&1)));
    }
}
