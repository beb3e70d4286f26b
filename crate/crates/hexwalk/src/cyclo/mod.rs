//! Exact arithmetic in the cyclotomic field Q(zeta_48), zeta = e^{i pi/24}.
//!
//! This one field holds every constant the identity checks need: the
//! critical weight x_c = 1/sqrt(2+sqrt2), the connective constant
//! mu = sqrt(2+sqrt2), cos(pi/8), cos(3pi/8), cos(pi/4), sqrt2, sqrt3, the
//! imaginary unit, and all winding phases e^{-i sigma W} with sigma = 5/8
//! (W a multiple of pi/3).  Elements are stored in the power basis
//! {1, zeta, ..., zeta^15} of Q[z]/Phi_48(z) with Phi_48(z) = z^16 - z^8 + 1,
//! so equality and zero tests are coefficient-wise and exact.
//!
//! Decimal output goes through certified interval evaluation
//! ([`approximate`], [`real_sign`]); decimals never feed back into any
//! decision.

mod approx;

pub use approx::{approximate, enclosure_re_im, real_sign};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::rational::BigRational;
use num::{BigInt, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const PHI_DEGREE: usize = 16;

/// An element of Q(zeta_48) in the power basis {zeta^0 .. zeta^15}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Cyc {
    c: [BigRational; 16],
}

impl From<Cyc> for Vec<String> {
    fn from(v: Cyc) -> Self {
        v.c.iter().map(|r| r.to_string()).collect()
    }
}

impl TryFrom<Vec<String>> for Cyc {
    type Error = Error;
    fn try_from(ss: Vec<String>) -> Result<Self> {
        if ss.len() != 16 {
            return Err(Error::Parse(format!("expected 16 coefficients, got {}", ss.len())));
        }
        let mut c = std::array::from_fn::<BigRational, 16, _>(|_| BigRational::zero());
        for (i, s) in ss.iter().enumerate() {
            c[i] = BigRational::from_str(s.trim())
                .map_err(|e| Error::Parse(format!("coefficient {i}: {e}")))?;
        }
        Ok(Cyc { c })
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, r) in self.c.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{r}")?;
            } else {
                write!(f, "({r})*z^{j}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn zero_coeffs() -> [BigRational; 16] {
    std::array::from_fn(|_| BigRational::zero())
}

impl Cyc {
    pub fn zero() -> Cyc {
        Cyc { c: zero_coeffs() }
    }

    pub fn one() -> Cyc {
        Cyc::from_int(1)
    }

    pub fn from_int(n: i64) -> Cyc {
        let mut c = zero_coeffs();
        c[0] = BigRational::from(BigInt::from(n));
        Cyc { c }
    }

    pub fn from_bigint(n: &BigInt) -> Cyc {
        let mut c = zero_coeffs();
        c[0] = BigRational::from(n.clone());
        Cyc { c }
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Cyc> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut c = zero_coeffs();
        c[0] = BigRational::new(BigInt::from(num), BigInt::from(den));
        Ok(Cyc { c })
    }

    pub fn from_rational(r: BigRational) -> Cyc {
        let mut c = zero_coeffs();
        c[0] = r;
        Cyc { c }
    }

    pub fn coeffs(&self) -> &[BigRational; 16] {
        &self.c
    }

    /// zeta^k for any integer k, reduced into the power basis.
    /// Reduction rules: zeta^24 = -1 and zeta^{16+t} = zeta^{8+t} - zeta^t.
    pub fn zeta_pow(k: i64) -> Cyc {
        let j = k.rem_euclid(48);
        if j < 24 {
            Self::zeta_pow_reduced(j as usize, false)
        } else {
            Self::zeta_pow_reduced((j - 24) as usize, true)
        }
    }

    fn zeta_pow_reduced(j: usize, negate: bool) -> Cyc {
        let mut c = zero_coeffs();
        let one = BigRational::one();
        if j < 16 {
            c[j] = if negate { -one } else { one };
        } else {
            // zeta^j = zeta^{j-8} - zeta^{j-16}, both exponents < 16
            let (a, b) = (j - 8, j - 16);
            if negate {
                c[a] = -one.clone();
                c[b] = one;
            } else {
                c[a] = one.clone();
                c[b] = -one;
            }
        }
        Cyc { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|r| r.is_zero())
    }

    /// True iff the element is rational (only the constant coefficient).
    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(|r| r.is_zero())
    }

    /// Complex conjugation: zeta -> zeta^{-1}.  Fixes exactly the real
    /// subfield.
    pub fn conj(&self) -> Cyc {
        let mut out = Cyc::zero();
        for (j, r) in self.c.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            out = &out + &Cyc::zeta_pow(-(j as i64)).scale(r);
        }
        out
    }

    pub fn is_real(&self) -> bool {
        self == &self.conj()
    }

    pub fn scale(&self, r: &BigRational) -> Cyc {
        let mut c = self.c.clone();
        for x in &mut c {
            *x = &*x * r;
        }
        Cyc { c }
    }

    pub fn scale_int(&self, n: &BigInt) -> Cyc {
        self.scale(&BigRational::from(n.clone()))
    }

    pub fn pow(&self, mut e: u64) -> Cyc {
        let mut base = self.clone();
        let mut acc = Cyc::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[z]
    /// modulo Phi_48.
    pub fn inv(&self) -> Result<Cyc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Phi_48 = z^16 - z^8 + 1
        let mut phi = vec![BigRational::zero(); 17];
        phi[0] = BigRational::one();
        phi[8] = -BigRational::one();
        phi[16] = BigRational::one();
        let a: Vec<BigRational> = self.c.to_vec();

        let (mut r0, mut r1) = (phi, poly_trim(a));
        let (mut s0, mut s1) = (vec![], vec![BigRational::one()]);
        while !r1.is_empty() {
            let q = poly_div(&r0, &r1);
            let r2 = poly_sub(&r0, &poly_mul(&q, &r1));
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r2;
            s0 = s1;
            s1 = s2;
        }
        // r0 is a nonzero constant (Phi_48 is irreducible over Q).
        debug_assert_eq!(r0.len(), 1);
        let lead = r0[0].clone();
        let mut c = zero_coeffs();
        for (j, x) in s0.iter().enumerate() {
            debug_assert!(j < 16);
            c[j] = x / &lead;
        }
        Ok(Cyc { c })
    }

    /// Real part (self + conj)/2.
    pub fn re(&self) -> Cyc {
        (self + &self.conj()).scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
    }

    /// Imaginary part as a real element: (self - conj)/(2i).
    pub fn im(&self) -> Cyc {
        let two_i = Cyc::zeta_pow(12).scale(&BigRational::from(BigInt::from(2)));
        (&(self - &self.conj()) * &two_i.inv().expect("2i invertible")).clone()
    }
}

// --- operator impls (on references; clone for owned forms) -----------------

impl<'b> Add<&'b Cyc> for &Cyc {
    type Output = Cyc;
    fn add(self, rhs: &'b Cyc) -> Cyc {
        let mut c = self.c.clone();
        for (x, y) in c.iter_mut().zip(rhs.c.iter()) {
            *x = &*x + y;
        }
        Cyc { c }
    }
}

impl<'b> Sub<&'b Cyc> for &Cyc {
    type Output = Cyc;
    fn sub(self, rhs: &'b Cyc) -> Cyc {
        let mut c = self.c.clone();
        for (x, y) in c.iter_mut().zip(rhs.c.iter()) {
            *x = &*x - y;
        }
        Cyc { c }
    }
}

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        let mut c = self.c.clone();
        for x in &mut c {
            *x = -x.clone();
        }
        Cyc { c }
    }
}

impl<'b> Mul<&'b Cyc> for &Cyc {
    type Output = Cyc;
    fn mul(self, rhs: &'b Cyc) -> Cyc {
        let mut conv = vec![BigRational::zero(); 31];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] = &conv[i + j] + &(a * b);
            }
        }
        // Reduce degrees 30..16 with zeta^d = zeta^{d-8} - zeta^{d-16}.
        for d in (16..=30).rev() {
            if conv[d].is_zero() {
                continue;
            }
            let t = conv[d].clone();
            conv[d - 8] = &conv[d - 8] + &t;
            conv[d - 16] = &conv[d - 16] - &t;
            conv[d] = BigRational::zero();
        }
        let mut c = zero_coeffs();
        c.clone_from_slice(&conv[..16]);
        Cyc { c }
    }
}

impl Add for Cyc {
    type Output = Cyc;
    fn add(self, rhs: Cyc) -> Cyc {
        &self + &rhs
    }
}
impl Sub for Cyc {
    type Output = Cyc;
    fn sub(self, rhs: Cyc) -> Cyc {
        &self - &rhs
    }
}
impl Mul for Cyc {
    type Output = Cyc;
    fn mul(self, rhs: Cyc) -> Cyc {
        &self * &rhs
    }
}
impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        -&self
    }
}

// --- dense polynomial helpers over Q (little-endian, trimmed) --------------

fn poly_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|x| x.is_zero()) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] = x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        out[i] = &out[i] - y;
    }
    poly_trim(out)
}

/// Quotient of a by b (b nonzero), discarding the remainder.
fn poly_div(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return vec![];
    }
    let mut q = vec![BigRational::zero(); rem.len() - db];
    for d in (db..rem.len()).rev() {
        if rem[d].is_zero() {
            continue;
        }
        let f = &rem[d] / &lead;
        q[d - db] = f.clone();
        for (j, y) in b.iter().enumerate() {
            rem[d - db + j] = &rem[d - db + j] - &(&f * y);
        }
    }
    poly_trim(q)
}

// ---------------------------------------------------------------------------
// Named constants
// ---------------------------------------------------------------------------

/// The named constants of the toolkit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constant {
    XCritical,
    Mu,
    CosPi8,
    Cos3Pi8,
    CosPi4,
    Sqrt2,
    Sqrt3,
    ImagUnit,
}

impl Constant {
    pub fn parse(name: &str) -> Result<Constant> {
        Ok(match name {
            "x_c" => Constant::XCritical,
            "mu" => Constant::Mu,
            "cos_pi_8" => Constant::CosPi8,
            "cos_3pi_8" => Constant::Cos3Pi8,
            "cos_pi_4" => Constant::CosPi4,
            "sqrt2" => Constant::Sqrt2,
            "sqrt3" => Constant::Sqrt3,
            "imag_unit" => Constant::ImagUnit,
            _ => return Err(Error::Contract(format!("unknown constant `{name}`"))),
        })
    }
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Exact value of a named constant.
pub fn constant(c: Constant) -> Cyc {
    match c {
        Constant::CosPi8 => (&Cyc::zeta_pow(3) + &Cyc::zeta_pow(-3)).scale(&half()),
        Constant::Cos3Pi8 => (&Cyc::zeta_pow(9) + &Cyc::zeta_pow(-9)).scale(&half()),
        Constant::CosPi4 => (&Cyc::zeta_pow(6) + &Cyc::zeta_pow(-6)).scale(&half()),
        Constant::Sqrt2 => &Cyc::zeta_pow(6) + &Cyc::zeta_pow(-6),
        Constant::Sqrt3 => &Cyc::zeta_pow(4) + &Cyc::zeta_pow(-4),
        Constant::ImagUnit => Cyc::zeta_pow(12),
        Constant::Mu => &Cyc::zeta_pow(3) + &Cyc::zeta_pow(-3),
        Constant::XCritical => constant(Constant::Mu).inv().expect("mu != 0"),
    }
}

pub fn x_critical() -> Cyc {
    constant(Constant::XCritical)
}

// ---------------------------------------------------------------------------
// Winding phases
// ---------------------------------------------------------------------------

/// e^{-i * (5/8) * w * pi/3} = zeta^{-5w}: the observable phase at
/// sigma = 5/8 for winding number w (in units of pi/3).
pub fn winding_phase(w: i64) -> Cyc {
    Cyc::zeta_pow(-5 * w.rem_euclid(48))
}

/// A rational sigma whose phases live in Q(zeta_48): denominator | 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sigma {
    num: i64,
    den: i64,
}

impl Sigma {
    pub const FIVE_EIGHTHS: Sigma = Sigma { num: 5, den: 8 };
    pub const ZERO: Sigma = Sigma { num: 0, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Sigma> {
        if den <= 0 || 8 % den != 0 {
            return Err(Error::Contract(format!(
                "sigma = {num}/{den}: denominator must divide 8 so phases stay in Q(zeta_48)"
            )));
        }
        Ok(Sigma { num, den })
    }

    /// e^{-i sigma w pi/3} = zeta^{-8 sigma w / den}.
    pub fn phase(&self, w: i64) -> Cyc {
        Cyc::zeta_pow(-(8 / self.den) * self.num * (w.rem_euclid(48)))
    }

    pub fn num(&self) -> i64 {
        self.num
    }
    pub fn den(&self) -> i64 {
        self.den
    }
}

/// Exact comparison helpers for real field elements.
pub fn real_cmp(a: &Cyc, b: &Cyc) -> Result<Ordering> {
    real_sign(&(a - b))
}

pub fn real_le(a: &Cyc, b: &Cyc) -> Result<bool> {
    Ok(real_cmp(a, b)? != Ordering::Greater)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_relations() {
        assert_eq!(Cyc::zeta_pow(24), -Cyc::one());
        assert_eq!(Cyc::zeta_pow(48), Cyc::one());
        let z16 = Cyc::zeta_pow(16);
        assert_eq!(z16, &Cyc::zeta_pow(8) - &Cyc::one());
        // Phi_48(zeta) = 0
        let phi = &(&Cyc::zeta_pow(16) - &Cyc::zeta_pow(8)) + &Cyc::one();
        assert!(phi.is_zero());
        // zeta^a * zeta^b == zeta^{a+b}
        for a in -5..30 {
            for b in 0..10 {
                assert_eq!(
                    &Cyc::zeta_pow(a) * &Cyc::zeta_pow(b),
                    Cyc::zeta_pow(a + b)
                );
            }
        }
    }

    #[test]
    fn constants_satisfy_their_minimal_relations() {
        let mu = constant(Constant::Mu);
        let xc = constant(Constant::XCritical);
        assert_eq!(&mu * &xc, Cyc::one());
        // mu^2 = 2 + sqrt2
        let mu2 = &mu * &mu;
        let want = &Cyc::from_int(2) + &constant(Constant::Sqrt2);
        assert_eq!(mu2, want);
        // sqrt3^2 = 3, sqrt2^2 = 2
        let s3 = constant(Constant::Sqrt3);
        assert_eq!(&s3 * &s3, Cyc::from_int(3));
        let s2 = constant(Constant::Sqrt2);
        assert_eq!(&s2 * &s2, Cyc::from_int(2));
        // cos(pi/4)^2 = 1/2
        let c4 = constant(Constant::CosPi4);
        assert_eq!(&c4 * &c4, Cyc::from_ratio(1, 2).unwrap());
        // i^2 = -1
        let i = constant(Constant::ImagUnit);
        assert_eq!(&i * &i, -Cyc::one());
        // 2 cos(pi/8) = mu
        assert_eq!(constant(Constant::CosPi8).scale_int(&BigInt::from(2)), mu);
        // all real constants are conj-fixed; i is not
        for c in [
            Constant::XCritical,
            Constant::Mu,
            Constant::CosPi8,
            Constant::Cos3Pi8,
            Constant::CosPi4,
            Constant::Sqrt2,
            Constant::Sqrt3,
        ] {
            assert!(constant(c).is_real(), "{c:?} should be real");
        }
        assert!(!i.is_real());
    }

    #[test]
    fn winding_phases() {
        assert_eq!(winding_phase(0), Cyc::one());
        assert_eq!(winding_phase(48), Cyc::one());
        for w in -10..10 {
            assert_eq!(&winding_phase(w) * &winding_phase(-w), Cyc::one());
            assert_eq!(winding_phase(w), Sigma::FIVE_EIGHTHS.phase(w));
        }
        assert_eq!(Sigma::ZERO.phase(7), Cyc::one());
        assert!(Sigma::new(1, 3).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let elems = [
            constant(Constant::Mu),
            constant(Constant::XCritical),
            &Cyc::zeta_pow(7) + &Cyc::from_ratio(3, 5).unwrap(),
            &Cyc::zeta_pow(11).scale(&BigRational::new(BigInt::from(-2), BigInt::from(7)))
                + &Cyc::zeta_pow(2),
        ];
        for a in &elems {
            assert_eq!(&a.inv().unwrap() * a, Cyc::one());
        }
        assert!(Cyc::zero().inv().is_err());
    }

    #[test]
    fn serde_roundtrip() {
        let a = &constant(Constant::XCritical) + &Cyc::zeta_pow(5);
        let s = serde_json::to_string(&a).unwrap();
        let b: Cyc = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn real_and_imaginary_parts() {
        let a = &constant(Constant::XCritical) + &Cyc::zeta_pow(5);
        let re = a.re();
        let im = a.im();
        assert!(re.is_real());
        assert!(im.is_real());
        let i = constant(Constant::ImagUnit);
        assert_eq!(&re + &(&i * &im), a);
    }
}
