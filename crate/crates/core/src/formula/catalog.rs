//! Read-only registry of named formulas, stored as written and
//! regenerable from the series.

use num_bigint::BigInt;
use serde_json::Value;

use super::derive;
use super::json::{factorial_to_json, formula_to_json};
use super::{make_series, BbpFormula, FactorialSeries, Formula};
use crate::error::{Error, Result};
use crate::scalar::{gauss, int, rat, Rational};
use crate::tag::ConstantTag;

#[derive(Clone, Debug, PartialEq)]
pub enum CatalogEntry {
    Bbp(BbpFormula),
    Factorial(FactorialSeries),
}

impl CatalogEntry {
    pub fn to_bbp(&self) -> Result<BbpFormula> {
        match self {
            CatalogEntry::Bbp(f) => Ok(f.clone()),
            CatalogEntry::Factorial(f) => f.to_bbp(),
        }
    }

    pub fn target(&self) -> &ConstantTag {
        match self {
            CatalogEntry::Bbp(f) => &f.target,
            CatalogEntry::Factorial(f) => &f.target,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CatalogEntry::Bbp(f) => formula_to_json(f),
            CatalogEntry::Factorial(f) => factorial_to_json(f),
        }
    }

    /// Same value presentation: canonical BBP layout for formulas, exact
    /// fields for factorial series.
    pub fn equivalent(&self, other: &CatalogEntry) -> bool {
        match (self, other) {
            (CatalogEntry::Bbp(a), CatalogEntry::Bbp(b)) => a.equivalent(b),
            (CatalogEntry::Factorial(a), CatalogEntry::Factorial(b)) => a == b,
            _ => false,
        }
    }
}

pub const NAMES: &[&str] = &[
    "bernoulli-log2",
    "log2-1",
    "log2-2",
    "log2-3",
    "log2-4",
    "log2-5",
    "log2-6",
    "log2-7",
    "log2-8",
    "log2-9",
    "log2-10",
    "log2-11",
    "log2-bbp16",
    "machin",
    "leibniz",
    "plouffe",
    "bbp-null-16",
    "null-64",
    "bellard",
    "pi-16",
    "log2-16",
];

fn log2() -> ConstantTag {
    ConstantTag::log_of(&int(2)).expect("2 > 0")
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&i| int(i)).collect()
}

#[allow(clippy::too_many_arguments)]
fn bbp(target: ConstantTag, r0: Rational, r1: Rational, base: i64, start: u64, offset: u32, coeffs: Vec<Rational>) -> CatalogEntry {
    let period = coeffs.len();
    CatalogEntry::Bbp(Formula::new(target, r0, r1, BigInt::from(base), period, start, offset, coeffs).expect("well-formed literal"))
}

/// `(r0, c)` of `log 2 = r0 + c Σ (-1)^{j+1}/(j…(j+k))`.
const AT_TWO: [(i64, i64, i64, i64); 5] = [(1, 2, 1, 2), (5, 8, 1, 2), (2, 3, 3, 4), (131, 192, 3, 2), (661, 960, 15, 4)];
/// `(r0, c)` of `log 2 = r0 + c Σ 1/(2^j j…(j+k-6))`.
const AT_HALF: [(i64, i64, i64); 6] = [(0, 1, 1), (1, 1, -1), (1, 2, 2), (5, 6, -6), (7, 12, 24), (47, 60, -120)];

/// The entry as written.
pub fn lookup(name: &str) -> Result<CatalogEntry> {
    let pi = ConstantTag::pi;
    if let Some(k) = name.strip_prefix("log2-").and_then(|k| k.parse::<usize>().ok()) {
        if (1..=5).contains(&k) {
            let (a, b, c, d) = AT_TWO[k - 1];
            return Ok(CatalogEntry::Factorial(FactorialSeries::from_display(log2(), rat(a, b), rat(c, d), int(1), true, k as u64 + 1)));
        }
        if (6..=11).contains(&k) {
            let (a, b, c) = AT_HALF[k - 6];
            return Ok(CatalogEntry::Factorial(FactorialSeries::from_display(log2(), rat(a, b), int(c), int(2), false, k as u64 - 5)));
        }
    }
    Ok(match name {
        "bernoulli-log2" => bbp(log2(), int(0), int(1), 2, 1, 0, ints(&[1])),
        "log2-bbp16" => bbp(log2(), rat(2, 3), rat(1, 4), 16, 1, 0, ints(&[8, 0, 4, 0, 2, 0, 1, 0])),
        "machin" => bbp(pi(), int(0), int(4), -1, 0, 1, ints(&[1, 0])),
        "leibniz" => bbp(pi(), rat(8, 3), int(4), 1, 1, 1, ints(&[1, 0, -1, 0])),
        "plouffe" => bbp(pi(), int(0), int(1), 16, 0, 1, ints(&[4, 0, 0, -2, -1, -1, 0, 0])),
        "bbp-null-16" => bbp(ConstantTag::zero(), int(0), int(1), 16, 0, 1, ints(&[-8, 8, 4, 8, 2, 2, -1, 0])),
        "null-64" => bbp(ConstantTag::zero(), int(0), int(1), 64, 0, 1, ints(&[16, -24, -8, -6, 1, 0])),
        "bellard" => CatalogEntry::Bbp(derive::from_residue_terms(
            pi(),
            int(0),
            rat(1, 64),
            BigInt::from(-1024),
            20,
            &derive::bellard_display_terms(),
        )?),
        "pi-16" => bbp(
            pi(),
            int(0),
            int(1),
            16,
            0,
            1,
            vec![int(2), int(2), int(1), int(0), rat(-1, 2), rat(-1, 2), rat(-1, 4), int(0)],
        ),
        "log2-16" => bbp(
            log2(),
            int(0),
            int(1),
            16,
            0,
            0,
            vec![int(2), int(1), int(0), rat(-1, 2), rat(-1, 2), rat(-1, 4), int(0), rat(1, 8)],
        ),
        _ => {
            return Err(Error::UnknownEntry { name: name.to_string(), available: NAMES.iter().map(|s| s.to_string()).collect() })
        }
    })
}

/// The entry rebuilt from the series.
pub fn regenerate(name: &str) -> Result<CatalogEntry> {
    if let Some(k) = name.strip_prefix("log2-").and_then(|k| k.parse::<u64>().ok()) {
        let (n, s) = match k {
            1..=5 => (k + 1, int(2)),
            6..=11 => (k - 5, rat(1, 2)),
            _ => return lookup(name),
        };
        let series = make_series(n, &gauss(s, int(0)))?;
        return Ok(CatalogEntry::Factorial(series.factorial_form()?));
    }
    let f = match name {
        "bernoulli-log2" => derive::bernoulli_log2()?,
        "log2-bbp16" => derive::log2_bbp16()?,
        "machin" => derive::machin()?,
        "leibniz" => derive::leibniz()?,
        "plouffe" => derive::plouffe()?,
        "bbp-null-16" => derive::bbp_null16()?,
        "null-64" => derive::null64()?,
        "bellard" => derive::bellard()?,
        "pi-16" => derive::pi16()?,
        "log2-16" => derive::log2_16()?,
        _ => return lookup(name),
    };
    Ok(CatalogEntry::Bbp(f))
}
