use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::formula::catalog::{lookup, CatalogEntry, NAMES};
use crate::scalar::{int, rat, Rational};
use crate::tag::ConstantTag;

fn bbp(name: &str) -> crate::formula::BbpFormula {
    lookup(name).unwrap().to_bbp().unwrap()
}

fn log2() -> ConstantTag {
    ConstantTag::log_of(&int(2)).unwrap()
}

/// Hex digits of an interval at `[position, position + count)`, if certain.
fn hex_of(iv: &IntervalValue, position: u64, count: usize) -> Option<String> {
    let scale = Rational::from_integer(BigInt::one() << (4 * (position as usize + count)));
    let window = BigInt::one() << (4 * count);
    let lo = (&iv.lower * &scale).floor().to_integer() % &window;
    let hi = (&iv.upper * &scale).floor().to_integer() % &window;
    (lo == hi).then(|| format!("{:0>width$}", lo.to_str_radix(16).to_uppercase(), width = count))
}

const PI_35: &str = "314159265358979323846264338327950288";

fn pi_decimal() -> Rational {
    Rational::new(PI_35.parse().unwrap(), BigInt::from(10).pow(35))
}

#[test]
fn reference_examples() {
    assert_eq!(reference(&ConstantTag::zero(), 64).unwrap(), IntervalValue::exact(int(0), 64));
    let r = reference(&ConstantTag::rational(rat(5, 8)), 64).unwrap();
    assert_eq!((r.lower.clone(), r.upper.clone()), (rat(5, 8), rat(5, 8)));
    let pi = reference_pi(64).unwrap();
    assert!(pi.width() <= eps(62));
    assert!((&pi.lower - pi_decimal()).abs() < rat(1, 1_000_000_000_000_000_000) * rat(1, 1000));
    assert_eq!(pi.precision_bits, 64);
}

#[test]
fn reference_logs_and_args() {
    let l2 = reference(&log2(), 80).unwrap();
    assert!((l2.midpoint() - std::f64::consts::LN_2).abs() < 1e-15);
    let l3 = reference(&ConstantTag::log_of(&rat(3, 2)).unwrap(), 80).unwrap();
    assert!((l3.midpoint() - 1.5f64.ln()).abs() < 1e-15);
    let a = reference_arctan(&BigInt::from(2), &BigInt::from(1), 80).unwrap();
    assert!((a.midpoint() - 0.5f64.atan()).abs() < 1e-15);
    // π/4 = 2 arg(2+i) - arg(7+i)
    let b = reference_arctan(&BigInt::from(7), &BigInt::from(1), 80).unwrap();
    let combo = a.scale(&int(2)).add(&b.scale(&int(-1))).scale(&int(4));
    assert!(combo.overlaps(&reference_pi(80).unwrap()));
}

#[test]
fn eval_examples() {
    let pi = reference_pi(64).unwrap();
    assert!(eval_bbp(&bbp("plouffe"), 64).unwrap().overlaps(&pi));
    let z = eval_bbp(&bbp("bbp-null-16"), 128).unwrap();
    assert!(z.contains(&int(0)));
    assert!(z.width() <= eps(126));
    let l = eval_entry(&lookup("log2-6").unwrap(), 64).unwrap();
    assert!(l.overlaps(&reference(&log2(), 64).unwrap()));
    assert!(matches!(eval_bbp(&bbp("machin"), 64), Err(Error::NeedsRegrouping(_))));
}

#[test]
fn verify_examples() {
    assert!(verify_formula(&bbp("bellard"), 128).unwrap().ok);
    assert!(verify_formula(&bbp("null-64"), 128).unwrap().ok);
    let mut bad = bbp("plouffe");
    bad.coeffs[0] = int(5);
    assert!(!verify_formula(&bad, 64).unwrap().ok);
}

#[test]
fn every_catalog_entry_matches_reference() {
    for name in NAMES {
        let e = lookup(name).unwrap();
        let mut prev: Option<IntervalValue> = None;
        for bits in [64, 128, 256] {
            let r = verify_entry(&e, bits).unwrap();
            assert!(r.ok, "{name} at {bits}: {r:?}");
            if let Some(p) = &prev {
                assert!(p.overlaps(&r.value), "{name}");
            }
            if matches!(&e, CatalogEntry::Bbp(f) if f.convergence() == crate::formula::Convergence::Geometric) {
                assert_eq!(r.value.precision_bits, bits, "{name}");
            }
            prev = Some(r.value);
        }
    }
}

#[test]
fn independent_formulas_agree() {
    for bits in [64, 160, 256] {
        let a = eval_bbp(&bbp("plouffe"), bits).unwrap();
        let b = eval_bbp(&bbp("bellard"), bits).unwrap();
        assert!(a.overlaps(&b));
        let c = eval_entry(&lookup("log2-6").unwrap(), bits).unwrap();
        let d = eval_bbp(&bbp("log2-bbp16"), bits).unwrap();
        assert!(c.overlaps(&d));
    }
}

#[test]
fn digit_examples() {
    let run = digit_extract(&bbp("plouffe"), 0, 10, 16).unwrap();
    assert_eq!(run.digits, "243F6A8885");
    assert_eq!(run.integer_part.as_deref(), Some("3"));
    let oracle = hex_of(&reference_pi(80).unwrap(), 0, 10).unwrap();
    assert_eq!(run.digits, oracle);
    assert_eq!(digit_extract(&bbp("plouffe"), 0, 0, 16).unwrap().digits, "");
    let l = digit_extract(&bbp("log2-bbp16"), 0, 8, 16).unwrap();
    assert_eq!(l.digits, hex_of(&reference(&log2(), 64).unwrap(), 0, 8).unwrap());
    let bin = digit_extract(&bbp("plouffe"), 0, 8, 2).unwrap();
    assert_eq!(bin.digits, "00100100");
    assert!(matches!(digit_extract(&bbp("plouffe"), 0, 4, 10), Err(Error::Domain(_))));
    assert!(matches!(digit_extract(&bbp("machin"), 0, 4, 16), Err(Error::Domain(_))));
}

#[test]
fn bellard_digits_match_plouffe() {
    let a = digit_extract(&bbp("bellard"), 100, 12, 16).unwrap();
    let b = digit_extract(&bbp("plouffe"), 100, 12, 16).unwrap();
    assert_eq!(a.digits, b.digits);
}

#[test]
fn null_formula_digits_are_indeterminate() {
    assert!(matches!(digit_extract(&bbp("bbp-null-16"), 5, 4, 16), Err(Error::IndeterminateDigit { .. })));
}

#[test]
fn spigot_agrees_with_direct_expansion() {
    let f = bbp("plouffe");
    for position in 0..=64u64 {
        let run = digit_extract(&f, position, 1, 16).unwrap();
        let iv = reference_pi(position as u32 * 4 + 64).unwrap();
        assert_eq!(Some(run.digits), hex_of(&iv, position, 1), "position {position}");
    }
}

#[test]
fn egyptian_examples() {
    let r = egyptian_check(2, 1).unwrap();
    assert_eq!(r.partial_sum, rat(1, 4));
    assert!(r.contains_reciprocal);
    let r = egyptian_check(2, 1000).unwrap();
    assert!(r.contains_reciprocal && r.interval.width() < rat(1, 1_000_000));
    assert!(egyptian_check(10, 1000).unwrap().contains_reciprocal);
    assert!(egyptian_check(1, 10).is_err());
}

#[test]
fn egyptian_tail_is_exact() {
    // oracle: brute-force partial sums converge to the same total
    for n in 2..=10u64 {
        let r = egyptian_check(n, 10).unwrap();
        let long = egyptian_check(n, 200).unwrap();
        assert_eq!(&r.partial_sum + &r.tail, &long.partial_sum + &long.tail);
        assert!(long.tail < r.tail);
        assert!(!r.tail.is_zero());
    }
}

#[test]
fn interval_precision_reflects_width() {
    let iv = IntervalValue::new(int(0), rat(1, 1024), 64);
    assert_eq!(iv.precision_bits, 12);
    assert!(iv.width() <= eps(iv.precision_bits - 2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn digits_shift_consistently(p in 0u64..1000, c in 2usize..16) {
        let f = bbp("plouffe");
        let a = digit_extract(&f, p, c, 16).unwrap();
        let b = digit_extract(&f, p + 1, c - 1, 16).unwrap();
        prop_assert_eq!(&a.digits[1..], &b.digits[..]);
    }

    #[test]
    fn combine_evaluates_linearly(a in -4i64..5, b in -4i64..5) {
        let f = bbp("pi-16");
        let g = bbp("bbp-null-16");
        let c = crate::formula::combine(&[(int(a), f.clone()), (int(b), g.clone())]).unwrap();
        let lhs = eval_bbp(&c, 96).unwrap();
        let rhs = eval_bbp(&f, 100).unwrap().scale(&int(a)).add(&eval_bbp(&g, 100).unwrap().scale(&int(b)));
        prop_assert!(lhs.overlaps(&rhs));
    }
}
