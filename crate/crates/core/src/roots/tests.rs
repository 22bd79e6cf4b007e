use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::*;
use crate::scalar::{int, rat};

fn q(c: &[(i64, i64)]) -> QPoly {
    Poly::new(c.iter().map(|&(a, b)| rat(a, b)).collect())
}

fn close(d: &Disk, re: f64, im: f64, eps: f64) -> bool {
    (d.approx() - Complex64::new(re, im)).norm() < eps
}

#[test]
fn sturm_counts_against_known_factorizations() {
    // (x-1)(x-2)(x²+1)
    let p = &(&Poly::new(vec![int(2), int(-3), int(1)]) * &Poly::new(vec![int(1), int(0), int(1)])) * &Poly::one();
    assert_eq!(count_real(&p), 2);
    let iv = isolate_real(&p, &rat(1, 1000));
    assert_eq!(iv.len(), 2);
    assert!(iv[0].0 <= int(1) && int(1) <= iv[0].1);
    // (x-1/3)² x: distinct roots only
    let r = &Poly::new(vec![rat(-1, 3), int(1)]);
    let p = &(r * r) * &Poly::monomial(int(1), 1);
    assert_eq!(count_real(&p), 2);
    assert_eq!(isolate_real(&p, &rat(1, 1000)).len(), 2);
}

#[test]
fn real_root_examples() {
    assert_eq!(real_root_count(4).unwrap().count, 0);
    assert_eq!(real_root_count(6).unwrap().count, 0);
    let r = real_root_count(5).unwrap();
    assert_eq!(r.count, 1);
    let (lo, hi) = &r.intervals[0];
    assert!(hi - lo < rat(1, 1_000_000));
    assert!((lo.to_f64().unwrap() + 0.61852).abs() < 1e-5);
    assert!(real_root_count(2).is_err());
}

#[test]
fn parity_law() {
    for n in 3..=30u64 {
        let r = real_root_count(n).unwrap();
        if n % 2 == 0 {
            assert_eq!(r.count, 0, "n = {n}");
        } else {
            assert_eq!(r.count, 1, "n = {n}");
            let (lo, hi) = &r.intervals[0];
            assert!(lo > &int(-1) && hi < &int(0), "n = {n}");
        }
    }
}

#[test]
fn w_transform_examples() {
    assert_eq!(w_transform(2).unwrap(), Poly::monomial(int(1), 1));
    assert_eq!(w_transform(3).unwrap(), q(&[(0, 1), (1, 1), (1, 2)]));
    assert_eq!(w_transform(6).unwrap(), q(&[(0, 1), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5)]));
    assert!(w_transform(1).is_err());
}

#[test]
fn w_map_pulls_back_to_d() {
    for n in 2..=40 {
        assert_eq!(pulled_back_transform(n).unwrap(), poly_d(n).unwrap(), "n = {n}");
    }
}

#[test]
fn unit_disk_examples() {
    let r = unit_disk_check(3).unwrap();
    assert!(r.ok);
    assert_eq!(r.roots.len(), 1);
    assert!(close(&r.roots[0], -2.0, 0.0, 1e-9));
    assert_eq!(r.bound_sum, rat(1, 2));
    for n in 2..=30 {
        assert!(unit_disk_check(n).unwrap().ok, "n = {n}");
    }
}

#[test]
fn half_plane_examples() {
    let r = half_plane_check(4, 1e-4).unwrap();
    assert!(r.half_plane_ok && r.unit_disk_ok && r.w_correspondence_ok);
    assert_eq!(r.complex_roots.len(), 2);
    assert!(r.complex_roots.iter().any(|d| close(d, -0.68182, 0.28386, 1e-5)));
    assert!(r.complex_roots.iter().any(|d| close(d, -0.68182, -0.28386, 1e-5)));
    let r = half_plane_check(5, 1e-4).unwrap();
    assert!(r.half_plane_ok);
    assert_eq!((r.real_root_count, r.complex_roots.len()), (1, 2));
    assert!(r.complex_roots.iter().any(|d| close(d, -0.73074, 0.49200, 1e-5)));
    let r = half_plane_check(6, 1e-4).unwrap();
    assert!(r.half_plane_ok && b_roots_in_half_plane(&r));
    assert_eq!(r.complex_roots.len(), 4);
}

#[test]
fn half_plane_holds_up_to_thirty() {
    for n in 3..=30u64 {
        let r = half_plane_check(n, 1e-9).unwrap();
        assert!(r.half_plane_ok && r.w_correspondence_ok, "n = {n}");
        assert_eq!(r.all_roots.len(), n as usize - 2);
        assert!(r.all_roots.iter().all(|d| d.radius <= rat(1, 1_000_000_000)));
        assert_eq!(r.real_roots.len(), r.real_root_count);
    }
}

#[test]
fn listed_c6_escapes_the_half_plane() {
    // the misprinted C_6 list (x and x³ numerators 180, 389) has roots near -0.18154 ± 0.39220i
    let listed = q(&[(60, 60), (180, 60), (470, 60), (389, 60), (137, 60)]);
    let disks = certified_roots(&listed, &rat(1, 1_000_000), |_| Verdict::Accept).unwrap();
    assert!(disks.iter().any(|d| close(d, -0.18154, 0.39220, 1e-4)));
    assert!(disks.iter().any(|d| d.center.re > rat(-1, 2)));
}

#[test]
fn certified_disks_hold_roots() {
    // (x² + 1)(x - 3): exact roots ±i and 3
    let p = &Poly::new(vec![int(1), int(0), int(1)]) * &Poly::new(vec![int(-3), int(1)]);
    let disks = certified_roots(&p, &rat(1, 1_000_000_000), |_| Verdict::Accept).unwrap();
    for (re, im) in [(0.0, 1.0), (0.0, -1.0), (3.0, 0.0)] {
        let d = disks.iter().find(|d| close(d, re, im, 1e-6)).unwrap();
        let dist = Complex64::new(re, im) - d.approx();
        assert!(dist.norm() <= d.radius.to_f64().unwrap() + 1e-15);
    }
}

#[test]
fn sqrt_upper_bounds() {
    for x in [rat(2, 1), rat(1, 3), Rational::new(BigInt::from(1), BigInt::from(10).pow(400)), rat(0, 1)] {
        let r = sqrt_upper(&x);
        assert!(&r * &r >= x);
        if x > int(0) {
            let slack = &r * &r / &x;
            assert!(slack < rat(1_000_001, 1_000_000));
        }
    }
}
