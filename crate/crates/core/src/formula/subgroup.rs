//! Membership of an integer in the multiplicative group generated by
//! `2` and `2^N ± 1`, `N ≤ n_max`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::derive::log_rational;
use super::{combine, BbpFormula};
use crate::error::{Error, Result};
use crate::factor::factorize;
use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Generator {
    Two,
    PowMinusOne(u32),
    PowPlusOne(u32),
}

impl Generator {
    pub fn value(&self) -> BigUint {
        let p = |n: u32| BigUint::one() << n as usize;
        match *self {
            Generator::Two => BigUint::from(2u32),
            Generator::PowMinusOne(n) => p(n) - 1u32,
            Generator::PowPlusOne(n) => p(n) + 1u32,
        }
    }

    /// `log g` as a BBP formula with a power-of-two base.
    pub fn log_formula(&self) -> Result<BbpFormula> {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let two = log_rational(&half)?;
        let (n, eps) = match *self {
            Generator::Two => return Ok(two),
            Generator::PowMinusOne(n) => (n, -1),
            Generator::PowPlusOne(n) => (n, 1),
        };
        let tail = Rational::one() + Rational::new(BigInt::from(eps), BigInt::one() << n as usize);
        combine(&[(Rational::from_integer(n.into()), two), (Rational::one(), log_rational(&tail)?)])
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Two => write!(f, "2"),
            Generator::PowMinusOne(n) => write!(f, "(2^{n}-1)"),
            Generator::PowPlusOne(n) => write!(f, "(2^{n}+1)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub k: BigUint,
    pub factors: Vec<(Generator, i64)>,
}

impl Decomposition {
    pub fn product(&self) -> Rational {
        self.factors.iter().fold(Rational::one(), |acc, (g, e)| {
            let v = Rational::from_integer(BigInt::from(g.value()));
            let p = num_traits::pow(v, e.unsigned_abs() as usize);
            if *e >= 0 { acc * p } else { acc / p }
        })
    }

    /// `log k` as a combination of the generator formulas, when the common
    /// period stays at most `max_period`.
    pub fn log_formula(&self, max_period: usize) -> Result<Option<BbpFormula>> {
        let l = self.factors.iter().fold(1usize, |acc, (g, _)| match g {
            Generator::Two => acc,
            Generator::PowMinusOne(n) | Generator::PowPlusOne(n) => acc.lcm(&(*n as usize)),
        });
        if 2 * l > max_period {
            return Ok(None);
        }
        let terms = self
            .factors
            .iter()
            .map(|(g, e)| Ok((Rational::from_integer(BigInt::from(*e)), g.log_formula()?)))
            .collect::<Result<Vec<_>>>()?;
        combine(&terms).map(Some)
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} =", self.k)?;
        for (i, (g, e)) in self.factors.iter().enumerate() {
            let sep = if i == 0 { " " } else { " · " };
            if *e == 1 {
                write!(f, "{sep}{g}")?;
            } else {
                write!(f, "{sep}{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A prime of `k` the generators cannot isolate.
#[derive(Clone, Debug, PartialEq)]
pub struct ObstructingPrime {
    pub prime: BigUint,
    /// Primes whose exponent in every generator equals this prime's.
    pub companions: Vec<BigUint>,
    /// Generators divisible by the prime.
    pub witnesses: Vec<Generator>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Obstruction {
    pub k: BigUint,
    pub primes: Vec<ObstructingPrime>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SubgroupResult {
    Found(Decomposition),
    Obstructed(Obstruction),
}

pub fn generators(n_max: u32) -> Vec<Generator> {
    let mut g = vec![Generator::Two];
    for n in 1..=n_max {
        if n > 1 {
            g.push(Generator::PowMinusOne(n));
        }
        g.push(Generator::PowPlusOne(n));
    }
    g
}

pub fn subgroup_decompose(k: &BigUint, n_max: u32) -> Result<SubgroupResult> {
    if *k < BigUint::from(2u32) {
        return Err(Error::Domain("k must be at least 2".into()));
    }
    if n_max == 0 || n_max > 64 {
        return Err(Error::Domain("n_max must lie in 1..=64".into()));
    }
    let gens = generators(n_max);
    let gen_factors: Vec<BTreeMap<BigUint, u32>> = gens.iter().map(|g| factorize(&g.value())).collect();
    let k_factors = factorize(k);

    let mut primes: Vec<BigUint> = gen_factors.iter().flat_map(|f| f.keys().cloned()).chain(k_factors.keys().cloned()).collect();
    primes.sort();
    primes.dedup();
    let row = |p: &BigUint| -> Vec<BigInt> { gen_factors.iter().map(|f| BigInt::from(*f.get(p).unwrap_or(&0))).collect() };
    let a: Vec<Vec<BigInt>> = primes.iter().map(row).collect();
    let v: Vec<BigInt> = primes.iter().map(|p| BigInt::from(*k_factors.get(p).unwrap_or(&0))).collect();

    if let Some(x) = solve_integer(&a, &v) {
        let factors: Vec<(Generator, i64)> = gens
            .iter()
            .zip(&x)
            .filter(|(_, e)| !e.is_zero())
            .map(|(g, e)| Ok((*g, e.to_i64().ok_or_else(|| Error::Consistency("exponent overflow".into()))?)))
            .collect::<Result<_>>()?;
        let d = Decomposition { k: k.clone(), factors };
        if d.product() != Rational::from_integer(BigInt::from(k.clone())) {
            return Err(Error::Consistency(format!("decomposition {d} does not multiply back")));
        }
        return Ok(SubgroupResult::Found(d));
    }

    let obstructing = k_factors
        .keys()
        .map(|p| {
            let rp = row(p);
            let companions = primes.iter().filter(|q| *q != p && row(q) == rp).cloned().collect();
            let witnesses = gens.iter().zip(&gen_factors).filter(|(_, f)| f.contains_key(p)).map(|(g, _)| *g).collect();
            ObstructingPrime { prime: p.clone(), companions, witnesses }
        })
        .filter(|o| !o.companions.is_empty() || o.witnesses.is_empty())
        .collect::<Vec<_>>();
    let primes = if obstructing.is_empty() {
        k_factors.keys().map(|p| ObstructingPrime { prime: p.clone(), companions: vec![], witnesses: vec![] }).collect()
    } else {
        obstructing
    };
    Ok(SubgroupResult::Obstructed(Obstruction { k: k.clone(), primes }))
}

/// Some integer `x` with `a·x = v`, via unimodular column reduction.
pub(crate) fn solve_integer(a: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> =
        (0..cols).map(|i| (0..cols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    // column ops act on h and u alike
    let col_axpy = |m: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        for r in m.iter_mut() {
            let t = &r[src] * q;
            r[dst] -= t;
        }
    };
    let swap = |m: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for r in m.iter_mut() {
            r.swap(i, j);
        }
    };
    let mut pivots: Vec<Option<usize>> = vec![None; rows];
    let mut p = 0;
    for i in 0..rows {
        if p == cols {
            break;
        }
        loop {
            let nz: Vec<usize> = (p..cols).filter(|&j| !h[i][j].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz.iter().min_by_key(|&&j| h[i][j].abs()).expect("nonempty");
            swap(&mut h, p, best);
            swap(&mut u, p, best);
            let mut done = true;
            for j in p + 1..cols {
                if h[i][j].is_zero() {
                    continue;
                }
                let q = h[i][j].div_floor(&h[i][p]);
                col_axpy(&mut h, j, p, &q);
                col_axpy(&mut u, j, p, &q);
                if !h[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                pivots[i] = Some(p);
                p += 1;
                break;
            }
        }
    }
    let mut y = vec![BigInt::zero(); cols];
    for i in 0..rows {
        let mut rest = v[i].clone();
        for (j, yj) in y.iter().enumerate() {
            if Some(j) != pivots[i] {
                rest -= &h[i][j] * yj;
            }
        }
        match pivots[i] {
            Some(pc) => {
                let (q, r) = rest.div_rem(&h[i][pc]);
                if !r.is_zero() {
                    return None;
                }
                y[pc] = q;
            }
            None if !rest.is_zero() => return None,
            None => {}
        }
    }
    Some((0..cols).map(|i| (0..cols).map(|j| &u[i][j] * &y[j]).sum()).collect())
}
