use num_rational::BigRational;
use penrose_core::exact::{gn_mul, gn_sign, golden_sign, orientation, Cyclotomic5, GoldenNumber, PHI_F64};
use proptest::prelude::*;

fn gn(a: (i64, i64), b: (i64, i64)) -> GoldenNumber {
    GoldenNumber::from_rationals(a, b)
}

fn as_f64(x: &GoldenNumber) -> f64 {
    x.to_f64()
}

/// Complex product in floats, the oracle for Z[ζ₅] multiplication.
fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn small_rational() -> impl Strategy<Value = (i64, i64)> {
    (-50i64..50, 1i64..20)
}

fn cyc() -> impl Strategy<Value = Cyclotomic5> {
    prop::array::uniform4(-30i64..30).prop_map(Cyclotomic5::from_coeffs)
}

proptest! {
    #[test]
    fn golden_ring_laws(a in small_rational(), b in small_rational(), c in small_rational(), d in small_rational(),
                        e in small_rational(), f in small_rational()) {
        let (x, y, z) = (gn(a, b), gn(c, d), gn(e, f));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(gn_mul(&x, &y), gn_mul(&y, &x));
        let approx = as_f64(&x) * as_f64(&y);
        prop_assert!((as_f64(&(&x * &y)) - approx).abs() < 1e-9 * (1.0 + approx.abs()));
    }

    #[test]
    fn golden_inverse(a in small_rational(), b in small_rational()) {
        let x = gn(a, b);
        match x.inverse() {
            Some(inv) => prop_assert_eq!(&x * &inv, GoldenNumber::one()),
            None => prop_assert!(x.is_zero()),
        }
    }

    #[test]
    fn sign_agrees_with_float_when_separated(a in -1_000_000i128..1_000_000, b in -1_000_000i128..1_000_000) {
        let v = a as f64 + b as f64 * PHI_F64;
        if v.abs() > 1e-6 {
            prop_assert_eq!(golden_sign(a, b), v.signum() as i8);
        }
        let big = GoldenNumber::from_ints(a as i64, b as i64);
        prop_assert_eq!(gn_sign(&big), golden_sign(a, b));
    }

    #[test]
    fn floor_brackets_value(a in small_rational(), b in small_rational()) {
        let x = gn(a, b);
        let f = GoldenNumber::new(BigRational::from_integer(x.floor()), BigRational::from_integer(0.into()));
        prop_assert!(f.cmp_exact(&x) != std::cmp::Ordering::Greater);
        let next = &f + &GoldenNumber::one();
        prop_assert!(next.cmp_exact(&x) == std::cmp::Ordering::Greater);
    }

    #[test]
    fn cyclotomic_product_matches_complex(u in cyc(), v in cyc()) {
        let exact = (u * v).embed();
        let approx = cmul(u.embed(), v.embed());
        prop_assert!((exact.0 - approx.0).abs() < 1e-6 && (exact.1 - approx.1).abs() < 1e-6);
    }

    #[test]
    fn reflection_is_conjugation(u in cyc()) {
        let (x, y) = u.embed();
        let (rx, ry) = u.reflect().embed();
        prop_assert!((x - rx).abs() < 1e-9 && (y + ry).abs() < 1e-9);
        prop_assert_eq!(u.reflect().reflect(), u);
    }

    #[test]
    fn exact_parts_match_embedding(u in cyc()) {
        let (x, y) = u.embed();
        let (a, b) = u.twice_real();
        prop_assert!(((a as f64 + b as f64 * PHI_F64) / 2.0 - x).abs() < 1e-9);
        let (c, d) = u.imag_over_sin36();
        let s36 = (std::f64::consts::PI / 5.0).sin();
        prop_assert!(((c as f64 + d as f64 * PHI_F64) * s36 - y).abs() < 1e-9);
        prop_assert!((u.norm_sq().to_f64() - (x * x + y * y)).abs() < 1e-6);
    }

    #[test]
    fn orientation_matches_float(a in cyc(), b in cyc(), c in cyc()) {
        let (pa, pb, pc) = (a.embed(), b.embed(), c.embed());
        let cross = (pb.0 - pa.0) * (pc.1 - pa.1) - (pb.1 - pa.1) * (pc.0 - pa.0);
        if cross.abs() > 1e-6 {
            prop_assert_eq!(orientation(&a, &b, &c), cross.signum() as i8);
        }
    }

    #[test]
    fn unit36_has_unit_length_and_right_angle(k in -20i64..20) {
        let u = Cyclotomic5::unit36(k);
        prop_assert_eq!(u.norm_sq(), GoldenNumber::one());
        let t = std::f64::consts::PI / 5.0 * k as f64;
        let (x, y) = u.embed();
        prop_assert!((x - t.cos()).abs() < 1e-12 && (y - t.sin()).abs() < 1e-12);
    }
}

#[test]
fn phi_identities() {
    let phi = GoldenNumber::phi();
    assert_eq!(&phi * &phi, &phi + &GoldenNumber::one());
    assert_eq!(Cyclotomic5::PHI * Cyclotomic5::PHI, Cyclotomic5::PHI + Cyclotomic5::ONE);
    assert_eq!(Cyclotomic5::PHI * Cyclotomic5::PHI_INVERSE, Cyclotomic5::ONE);
    // 1 + ζ + ζ² + ζ³ + ζ⁴ = 0.
    let sum = (0..5).fold(Cyclotomic5::ZERO, |s, k| s + Cyclotomic5::zeta_pow(k));
    assert!(sum.is_zero());
}

#[test]
#[should_panic(expected = "overflow")]
fn cyclotomic_overflow_is_detected() {
    let big = Cyclotomic5::new(i64::MAX, 0, 0, 0);
    let _ = big + Cyclotomic5::ONE;
}
