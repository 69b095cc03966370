//! Exact arithmetic in the golden field Q(φ) and the cyclotomic ring Z[ζ₅].
//!
//! Geometry in this crate never touches floating point when deciding
//! anything. Points live in Z[ζ₅]; real quantities derived from them
//! (twice a real part, a cross product divided by sin 36°, a squared length)
//! land in Z[φ] and are compared with [`golden_sign`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// The golden ratio as a float, used only at rendering and diagnostic boundaries.
pub const PHI_F64: f64 = 1.618_033_988_749_895;

/// Exact sign of `a + b·φ` for integer coefficients.
///
/// With φ = (1+√5)/2 we have 2(a + bφ) = (2a + b) + b√5, so the sign is
/// decided by comparing (2a + b)² against 5b².
pub fn golden_sign(a: i128, b: i128) -> i8 {
    let p = 2 * a + b;
    let q = b;
    sign_p_plus_q_sqrt5(p.signum() as i8, q.signum() as i8, || (p * p).cmp(&(5 * q * q)))
}

fn sign_p_plus_q_sqrt5(sp: i8, sq: i8, cmp_sq: impl FnOnce() -> Ordering) -> i8 {
    if sq == 0 {
        return sp;
    }
    if sp == 0 || sp == sq {
        return sq;
    }
    // Opposite signs: the larger magnitude wins. Equality would make √5 rational.
    match cmp_sq() {
        Ordering::Greater => sp,
        _ => sq,
    }
}

fn big_sign(a: &BigInt, b: &BigInt) -> i8 {
    let p: BigInt = a * 2 + b;
    let sp = sign_of(&p);
    let sq = sign_of(b);
    sign_p_plus_q_sqrt5(sp, sq, || (&p * &p).cmp(&(b * b * 5)))
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// An exact element `a + b·φ` of Q(φ) with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GoldenNumber {
    a: BigRational,
    b: BigRational,
}

impl GoldenNumber {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        // BigRational keeps itself in lowest terms with a positive denominator.
        GoldenNumber { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        GoldenNumber::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    pub fn from_rationals(a: (i64, i64), b: (i64, i64)) -> Self {
        GoldenNumber::new(BigRational::new(a.0.into(), a.1.into()), BigRational::new(b.0.into(), b.1.into()))
    }

    pub fn zero() -> Self {
        GoldenNumber::from_ints(0, 0)
    }

    pub fn one() -> Self {
        GoldenNumber::from_ints(1, 0)
    }

    pub fn phi() -> Self {
        GoldenNumber::from_ints(0, 1)
    }

    /// φ⁻¹ = φ − 1.
    pub fn phi_inverse() -> Self {
        GoldenNumber::from_ints(-1, 1)
    }

    /// φⁿ for any integer n, exact.
    pub fn phi_pow(n: i32) -> Self {
        let base = if n >= 0 { GoldenNumber::phi() } else { GoldenNumber::phi_inverse() };
        let mut out = GoldenNumber::one();
        for _ in 0..n.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn phi_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Galois conjugate: φ ↦ 1 − φ.
    pub fn conjugate(&self) -> Self {
        GoldenNumber::new(&self.a + &self.b, -&self.b)
    }

    /// Field norm a² + ab − b².
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conjugate();
        Some(GoldenNumber::new(c.a / &n, c.b / n))
    }

    pub fn checked_div(&self, other: &GoldenNumber) -> Option<Self> {
        other.inverse().map(|inv| self * &inv)
    }

    /// Exact sign, -1, 0 or +1, using integer arithmetic only.
    pub fn sign(&self) -> i8 {
        // Clear denominators with a positive common multiple.
        let l = self.a.denom().lcm(self.b.denom());
        let a = self.a.numer() * (&l / self.a.denom());
        let b = self.b.numer() * (&l / self.b.denom());
        big_sign(&a, &b)
    }

    pub fn cmp_exact(&self, other: &GoldenNumber) -> Ordering {
        (self - other).sign().cmp(&0)
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        let guess = self.to_f64().floor();
        let mut n = BigInt::from(guess as i64);
        loop {
            let lower = self - &GoldenNumber::new(BigRational::from_integer(n.clone()), BigRational::zero());
            if lower.sign() < 0 {
                n -= 1;
                continue;
            }
            let upper = &lower - &GoldenNumber::one();
            if upper.sign() >= 0 {
                n += 1;
                continue;
            }
            return n;
        }
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * PHI_F64
    }
}

impl fmt::Debug for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl fmt::Display for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}φ", self.a, self.b)
    }
}

impl<'a> Add<&'a GoldenNumber> for &'a GoldenNumber {
    type Output = GoldenNumber;
    fn add(self, o: &GoldenNumber) -> GoldenNumber {
        GoldenNumber::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl<'a> Sub<&'a GoldenNumber> for &'a GoldenNumber {
    type Output = GoldenNumber;
    fn sub(self, o: &GoldenNumber) -> GoldenNumber {
        GoldenNumber::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl<'a> Mul<&'a GoldenNumber> for &'a GoldenNumber {
    type Output = GoldenNumber;
    /// (a + bφ)(c + dφ) = (ac + bd) + (ad + bc + bd)φ, using φ² = φ + 1.
    fn mul(self, o: &GoldenNumber) -> GoldenNumber {
        let bd = &self.b * &o.b;
        GoldenNumber::new(&self.a * &o.a + &bd, &self.a * &o.b + &self.b * &o.a + bd)
    }
}

impl Add for GoldenNumber {
    type Output = GoldenNumber;
    fn add(self, o: GoldenNumber) -> GoldenNumber {
        &self + &o
    }
}

impl Sub for GoldenNumber {
    type Output = GoldenNumber;
    fn sub(self, o: GoldenNumber) -> GoldenNumber {
        &self - &o
    }
}

impl Mul for GoldenNumber {
    type Output = GoldenNumber;
    fn mul(self, o: GoldenNumber) -> GoldenNumber {
        &self * &o
    }
}

impl Neg for GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        GoldenNumber::new(-self.a, -self.b)
    }
}

/// Product of two golden numbers.
pub fn gn_mul(x: &GoldenNumber, y: &GoldenNumber) -> GoldenNumber {
    x * y
}

/// Sign of a golden number.
pub fn gn_sign(x: &GoldenNumber) -> i8 {
    x.sign()
}

/// Cosines of multiples of 72°, as (rational, φ) coefficients scaled by 2.
/// 2cos(72°·j) for j = 0..4.
const TWICE_COS72: [(i128, i128); 5] = [(2, 0), (-1, 1), (0, -1), (0, -1), (-1, 1)];

/// An element c0 + c1ζ + c2ζ² + c3ζ³ of Z[ζ₅], ζ = e^{2πi/5}.
///
/// Coefficients are machine integers with overflow-checked arithmetic; every
/// construction in this crate stays many orders of magnitude below the limit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cyclotomic5 {
    c: [i64; 4],
}

#[inline]
fn ck(x: Option<i64>) -> i64 {
    x.expect("Cyclotomic5 coefficient overflow")
}

impl Cyclotomic5 {
    pub const ZERO: Cyclotomic5 = Cyclotomic5 { c: [0; 4] };
    pub const ONE: Cyclotomic5 = Cyclotomic5 { c: [1, 0, 0, 0] };
    /// φ = −ζ² − ζ³.
    pub const PHI: Cyclotomic5 = Cyclotomic5 { c: [0, 0, -1, -1] };
    /// φ⁻¹ = φ − 1.
    pub const PHI_INVERSE: Cyclotomic5 = Cyclotomic5 { c: [-1, 0, -1, -1] };

    pub const fn new(c0: i64, c1: i64, c2: i64, c3: i64) -> Self {
        Cyclotomic5 { c: [c0, c1, c2, c3] }
    }

    pub const fn from_coeffs(c: [i64; 4]) -> Self {
        Cyclotomic5 { c }
    }

    pub fn coeffs(&self) -> [i64; 4] {
        self.c
    }

    /// Reduce an arbitrary coefficient vector over 1, ζ, ζ², ζ³, ζ⁴.
    pub fn from_power_coeffs(k: [i64; 5]) -> Self {
        Cyclotomic5::new(
            ck(k[0].checked_sub(k[4])),
            ck(k[1].checked_sub(k[4])),
            ck(k[2].checked_sub(k[4])),
            ck(k[3].checked_sub(k[4])),
        )
    }

    /// ζᵏ for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let mut p = [0i64; 5];
        p[k.rem_euclid(5) as usize] = 1;
        Cyclotomic5::from_power_coeffs(p)
    }

    /// The unit vector at angle 36°·k, that is (−ζ³)ᵏ = ζ^{3k}·(−1)ᵏ.
    pub fn unit36(k: i64) -> Self {
        let z = Cyclotomic5::zeta_pow(3 * k.rem_euclid(10));
        if k.rem_euclid(2) == 0 {
            z
        } else {
            -z
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0; 4]
    }

    /// Multiplication by φ.
    pub fn phi_times(&self) -> Self {
        *self * Cyclotomic5::PHI
    }

    /// Complex conjugation ζ ↦ ζ⁴ (mirror in the real axis).
    pub fn reflect(&self) -> Self {
        let [c0, c1, c2, c3] = self.c;
        // c1ζ⁴ + c2ζ³ + c3ζ², then ζ⁴ = −1 − ζ − ζ² − ζ³.
        Cyclotomic5::from_power_coeffs([c0, 0, c3, c2, c1])
    }

    /// Floating-point embedding (re, im). Rendering and diagnostics only.
    pub fn embed(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, &cj) in self.c.iter().enumerate() {
            let t = std::f64::consts::TAU * j as f64 / 5.0;
            re += cj as f64 * t.cos();
            im += cj as f64 * t.sin();
        }
        (re, im)
    }

    /// 2·Re as integer coefficients (a, b) of a + bφ.
    pub fn twice_real(&self) -> (i128, i128) {
        let mut a = 0i128;
        let mut b = 0i128;
        for (j, &cj) in self.c.iter().enumerate() {
            a += cj as i128 * TWICE_COS72[j].0;
            b += cj as i128 * TWICE_COS72[j].1;
        }
        (a, b)
    }

    /// Im / sin 36° as integer coefficients (a, b) of a + bφ.
    pub fn imag_over_sin36(&self) -> (i128, i128) {
        let [_, c1, c2, c3] = self.c;
        (c2 as i128 - c3 as i128, c1 as i128)
    }

    /// Twice the squared modulus, as a + bφ.
    pub fn twice_norm_sq(&self) -> (i128, i128) {
        (*self * self.reflect()).twice_real()
    }

    /// Squared modulus |u|², exact.
    pub fn norm_sq(&self) -> GoldenNumber {
        let (a, b) = self.twice_norm_sq();
        GoldenNumber::from_rationals((a as i64, 2), (b as i64, 2))
    }

    /// Cross product Im(conj(self)·other) divided by sin 36°, as a + bφ.
    pub fn cross_over_sin36(&self, other: &Cyclotomic5) -> (i128, i128) {
        (self.reflect() * *other).imag_over_sin36()
    }

    /// Cross product Im(conj(self)·other) divided by sin 36°, exact.
    pub fn cross(&self, other: &Cyclotomic5) -> GoldenNumber {
        let (a, b) = self.cross_over_sin36(other);
        GoldenNumber::from_ints(a as i64, b as i64)
    }

    /// Dot product Re(conj(self)·other) times two, as a + bφ.
    pub fn twice_dot(&self, other: &Cyclotomic5) -> (i128, i128) {
        (self.reflect() * *other).twice_real()
    }
}

/// Orientation of the triangle (a, b, c): +1 counterclockwise, −1 clockwise, 0 collinear.
pub fn orientation(a: &Cyclotomic5, b: &Cyclotomic5, c: &Cyclotomic5) -> i8 {
    let (x, y) = (*b - *a).cross_over_sin36(&(*c - *a));
    golden_sign(x, y)
}

/// Product in Z[ζ₅].
pub fn cyc_mul(u: &Cyclotomic5, v: &Cyclotomic5) -> Cyclotomic5 {
    *u * *v
}

impl fmt::Debug for Cyclotomic5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.c)
    }
}

impl Add for Cyclotomic5 {
    type Output = Cyclotomic5;
    fn add(self, o: Cyclotomic5) -> Cyclotomic5 {
        let mut c = [0; 4];
        for i in 0..4 {
            c[i] = ck(self.c[i].checked_add(o.c[i]));
        }
        Cyclotomic5 { c }
    }
}

impl AddAssign for Cyclotomic5 {
    fn add_assign(&mut self, o: Cyclotomic5) {
        *self = *self + o;
    }
}

impl Sub for Cyclotomic5 {
    type Output = Cyclotomic5;
    fn sub(self, o: Cyclotomic5) -> Cyclotomic5 {
        let mut c = [0; 4];
        for i in 0..4 {
            c[i] = ck(self.c[i].checked_sub(o.c[i]));
        }
        Cyclotomic5 { c }
    }
}

impl Neg for Cyclotomic5 {
    type Output = Cyclotomic5;
    fn neg(self) -> Cyclotomic5 {
        Cyclotomic5::ZERO - self
    }
}

impl Mul for Cyclotomic5 {
    type Output = Cyclotomic5;
    fn mul(self, o: Cyclotomic5) -> Cyclotomic5 {
        // Multiply as polynomials, fold ζ⁵ = 1, then rewrite ζ⁴.
        let mut p = [0i64; 5];
        for i in 0..4 {
            if self.c[i] == 0 {
                continue;
            }
            for j in 0..4 {
                let t = ck(self.c[i].checked_mul(o.c[j]));
                let k = (i + j) % 5;
                p[k] = ck(p[k].checked_add(t));
            }
        }
        Cyclotomic5::from_power_coeffs(p)
    }
}

impl Mul<i64> for Cyclotomic5 {
    type Output = Cyclotomic5;
    fn mul(self, k: i64) -> Cyclotomic5 {
        Cyclotomic5 { c: self.c.map(|x| ck(x.checked_mul(k))) }
    }
}

impl From<i64> for Cyclotomic5 {
    fn from(x: i64) -> Self {
        Cyclotomic5::new(x, 0, 0, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gn(a: i64, b: i64) -> GoldenNumber {
        GoldenNumber::from_ints(a, b)
    }

    #[test]
    fn golden_products() {
        assert_eq!(gn_mul(&gn(0, 1), &gn(0, 1)), gn(1, 1));
        assert_eq!(gn_mul(&gn(1, 1), &gn(2, -1)), gn(1, 0));
        let x = GoldenNumber::from_rationals((3, 7), (-5, 2));
        assert_eq!(gn_mul(&x, &GoldenNumber::one()), x);
    }

    #[test]
    fn golden_signs() {
        assert_eq!(gn_sign(&gn(1, 0)), 1);
        assert_eq!(gn_sign(&gn(-8, 5)), 1);
        assert_eq!(gn_sign(&gn(13, -8)), 1);
        assert_eq!(gn_sign(&gn(-13, 8)), -1);
        assert_eq!(gn_sign(&gn(0, 0)), 0);
        assert_eq!(gn_sign(&GoldenNumber::from_rationals((1, 3), (-1, 5))), 1);
        assert_eq!(golden_sign(-8, 5), 1);
        assert_eq!(golden_sign(13, -8), 1);
    }

    #[test]
    fn golden_inverse_and_floor() {
        let x = gn(3, -7);
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, GoldenNumber::one());
        assert!(gn(0, 0).inverse().is_none());
        assert_eq!(GoldenNumber::phi().floor(), BigInt::from(1));
        assert_eq!(gn(0, -1).floor(), BigInt::from(-2));
        assert_eq!(gn(5, 0).floor(), BigInt::from(5));
        assert_eq!(GoldenNumber::phi_pow(-2), gn(2, -1));
        assert_eq!(GoldenNumber::phi_pow(3), gn(1, 2));
    }

    #[test]
    fn cyclotomic_products() {
        let z = Cyclotomic5::zeta_pow;
        assert_eq!(cyc_mul(&z(2), &z(3)), Cyclotomic5::ONE);
        assert_eq!(cyc_mul(&z(1), &z(3)), Cyclotomic5::new(-1, -1, -1, -1));
        let a = Cyclotomic5::new(1, 1, 0, 0);
        let b = Cyclotomic5::ONE + z(4);
        assert_eq!(cyc_mul(&a, &b), Cyclotomic5::new(1, 0, -1, -1));
    }

    #[test]
    fn phi_multiplication() {
        assert_eq!(Cyclotomic5::ONE.phi_times(), Cyclotomic5::new(0, 0, -1, -1));
        assert_eq!(Cyclotomic5::PHI.phi_times(), Cyclotomic5::new(1, 0, -1, -1));
        assert_eq!(Cyclotomic5::ZERO.phi_times(), Cyclotomic5::ZERO);
        assert_eq!(Cyclotomic5::PHI * Cyclotomic5::PHI_INVERSE, Cyclotomic5::ONE);
    }

    #[test]
    fn embedding_and_reflection() {
        let (re, im) = Cyclotomic5::ONE.embed();
        assert!((re - 1.0).abs() < 1e-12 && im.abs() < 1e-12);
        let (re, im) = Cyclotomic5::zeta_pow(1).embed();
        assert!((re - 0.309017).abs() < 1e-6 && (im - 0.951057).abs() < 1e-6);
        let (re, im) = Cyclotomic5::PHI.embed();
        assert!((re - 1.618034).abs() < 1e-6 && im.abs() < 1e-12);

        assert_eq!(Cyclotomic5::zeta_pow(1).reflect(), Cyclotomic5::new(-1, -1, -1, -1));
        assert_eq!(Cyclotomic5::ONE.reflect(), Cyclotomic5::ONE);
        assert_eq!(Cyclotomic5::PHI.reflect(), Cyclotomic5::PHI);
    }

    #[test]
    fn unit36_directions() {
        for k in 0..10 {
            let (re, im) = Cyclotomic5::unit36(k).embed();
            let t = std::f64::consts::PI * k as f64 / 5.0;
            assert!((re - t.cos()).abs() < 1e-12 && (im - t.sin()).abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn exact_real_and_imaginary_parts() {
        let u = Cyclotomic5::new(3, -2, 5, 1);
        let (re, im) = u.embed();
        let (a, b) = u.twice_real();
        assert!(((a as f64 + b as f64 * PHI_F64) / 2.0 - re).abs() < 1e-9);
        let (a, b) = u.imag_over_sin36();
        let s36 = (std::f64::consts::PI / 5.0).sin();
        assert!(((a as f64 + b as f64 * PHI_F64) * s36 - im).abs() < 1e-9);
        assert_eq!(Cyclotomic5::unit36(3).norm_sq(), GoldenNumber::one());
        assert_eq!(Cyclotomic5::PHI.norm_sq(), gn(1, 1));
    }

    #[test]
    fn orientation_predicate() {
        let o = Cyclotomic5::ZERO;
        assert_eq!(orientation(&o, &Cyclotomic5::ONE, &Cyclotomic5::zeta_pow(1)), 1);
        assert_eq!(orientation(&o, &Cyclotomic5::zeta_pow(1), &Cyclotomic5::ONE), -1);
        assert_eq!(orientation(&o, &Cyclotomic5::ONE, &Cyclotomic5::PHI), 0);
    }
}
