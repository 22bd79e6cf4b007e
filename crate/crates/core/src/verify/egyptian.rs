//! `1/n = Σ_{j≥1} 1/binom(j+n+1, n+1)` with an exact tail.

use num_bigint::BigInt;
use serde::Serialize;

use super::IntervalValue;
use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EgyptianReport {
    pub n: u64,
    pub terms: u64,
    #[serde(with = "crate::scalar::serde_rational")]
    pub partial_sum: Rational,
    /// `Σ_{j>terms}`, which telescopes to `(J+n+2)/(n·binom(J+n+2, n+1))`.
    #[serde(with = "crate::scalar::serde_rational")]
    pub tail: Rational,
    pub interval: IntervalValue,
    pub contains_reciprocal: bool,
}

pub fn egyptian_check(n: u64, terms: u64) -> Result<EgyptianReport> {
    if n < 2 {
        return Err(Error::Domain("n must be at least 2".into()));
    }
    let one = BigInt::from(1);
    let partial_sum: Rational = (1..=terms).map(|j| Rational::new(one.clone(), binomial(j + n + 1, n as i64 + 1))).sum();
    let top = terms + n + 2;
    let tail = Rational::new(BigInt::from(top), BigInt::from(n) * binomial(top, n as i64 + 1));
    let total = &partial_sum + &tail;
    let interval = IntervalValue::new(total.clone(), total, u32::MAX);
    let contains_reciprocal = interval.contains(&Rational::new(one, BigInt::from(n)));
    Ok(EgyptianReport { n, terms, partial_sum, tail, interval, contains_reciprocal })
}
