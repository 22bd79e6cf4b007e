//! The polynomial families attached to the iterated primitives of `1/s`:
//! `I_n(s) = A_n(s)·log s + B_n(s)`, together with `C_n` and `D_n = x·C_n`
//! used for root location.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{binomial, factorial, harmonic_table, sign_pow};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{int, Rational};

pub type QPoly = Poly<Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Family {
    B,
    C,
}

type Cache = Mutex<HashMap<(Family, u64), Arc<QPoly>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(family: Family, n: u64, build: impl FnOnce() -> QPoly) -> Arc<QPoly> {
    if let Some(p) = cache().lock().expect("poisoned cache").get(&(family, n)) {
        return p.clone();
    }
    let built = Arc::new(build());
    // a racing thread may have filled the slot; keep whichever landed first
    cache().lock().expect("poisoned cache").entry((family, n)).or_insert(built).clone()
}

/// The pair `(A_n, B_n)` of order `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogPolyPair {
    pub n: u64,
    pub a_part: QPoly,
    pub b_part: QPoly,
}

impl LogPolyPair {
    pub fn new(n: u64) -> Result<Self> {
        Ok(LogPolyPair { n, a_part: poly_a(n)?, b_part: poly_b(n)? })
    }
}

/// `A_n(s) = s^{n-1}/(n-1)!`.
pub fn poly_a(n: u64) -> Result<QPoly> {
    if n == 0 {
        return Err(Error::Domain("A_n requires n >= 1".into()));
    }
    let c = Rational::new(BigInt::one(), factorial(n - 1));
    Ok(Poly::monomial(c, (n - 1) as usize))
}

/// `B_n(s) = -(1/(n-1)!) Σ_{k=1}^{n-1} C(n-1,k)(H_{n-1} - H_{n-1-k}) (s-1)^k`.
pub fn poly_b(n: u64) -> Result<QPoly> {
    if n == 0 {
        return Err(Error::Domain("B_n requires n >= 1".into()));
    }
    Ok((*cached(Family::B, n, || build_b(n))).clone())
}

fn build_b(n: u64) -> QPoly {
    let m = n - 1;
    let h = harmonic_table(m);
    let scale = -Rational::new(BigInt::one(), factorial(m));
    let mut in_x = vec![Rational::zero(); m as usize + 1];
    for k in 1..=m {
        let c = Rational::from_integer(binomial(m, k as i64)) * (&h[m as usize] - &h[(m - k) as usize]);
        in_x[k as usize] = &scale * c;
    }
    // x = s - 1
    Poly::new(in_x).shift(&int(-1))
}

/// `C_n(x) = Σ_{k=0}^{n-2} C(n-1,k+1)(H_{n-1} - H_{n-k-2}) x^k`.
pub fn poly_c(n: u64) -> Result<QPoly> {
    if n < 2 {
        return Err(Error::Domain("C_n requires n >= 2".into()));
    }
    Ok((*cached(Family::C, n, || build_c(n))).clone())
}

fn build_c(n: u64) -> QPoly {
    let h = harmonic_table(n - 1);
    let coeffs = (0..=n - 2)
        .map(|k| {
            Rational::from_integer(binomial(n - 1, k as i64 + 1)) * (&h[(n - 1) as usize] - &h[(n - k - 2) as usize])
        })
        .collect();
    Poly::new(coeffs)
}

/// `D_n(x) = x·C_n(x)`.
pub fn poly_d(n: u64) -> Result<QPoly> {
    let c = poly_c(n)?;
    Ok(&Poly::monomial(int(1), 1) * &c)
}

/// `B_n(0)` from the closed form `(-1)^n / ((n-1)(n-1)!)`, cross-checked
/// against evaluation of [`poly_b`].
pub fn b_at_zero(n: u64) -> Result<Rational> {
    if n < 2 {
        return Err(Error::Domain("B_n(0) closed form requires n >= 2".into()));
    }
    let closed = Rational::new(BigInt::from(sign_pow(n)), BigInt::from(n - 1) * factorial(n - 1));
    let evaluated = poly_b(n)?.eval(&Rational::zero());
    if closed != evaluated {
        return Err(Error::Consistency(format!("B_{n}(0): closed form {closed} but polynomial gives {evaluated}")));
    }
    Ok(closed)
}
