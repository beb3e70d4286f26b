//! Certified decimal evaluation of Q(zeta_48) elements.
//!
//! Evaluation runs in directed-rounding fixed-point intervals (integers at
//! scale 10^-P).  pi comes from Machin's formula, cos/sin from alternating
//! Taylor series with the first-omitted-term remainder bound, so every
//! enclosure is rigorous.  Signs of nonzero real elements are decided by
//! escalating the precision until the interval excludes zero; exact zero is
//! decided in the field first, never numerically.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};

use super::Cyc;

/// Closed interval of integers at scale 10^-P.
#[derive(Debug, Clone)]
struct Fx {
    lo: BigInt,
    hi: BigInt,
}

impl Fx {
    fn exact_int(n: i64, p: u32) -> Fx {
        let v = BigInt::from(n) * pow10(p);
        Fx { lo: v.clone(), hi: v }
    }

    fn width(&self) -> BigInt {
        &self.hi - &self.lo
    }

    fn add(&self, other: &Fx) -> Fx {
        Fx { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    fn sub(&self, other: &Fx) -> Fx {
        Fx { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }
    }

    /// Widen symmetrically by `pad` grid units.
    fn pad(&self, pad: &BigInt) -> Fx {
        Fx { lo: &self.lo - pad, hi: &self.hi + pad }
    }

    fn mul(&self, other: &Fx, p: u32) -> Fx {
        let candidates = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let min = candidates.iter().min().unwrap().clone();
        let max = candidates.iter().max().unwrap().clone();
        let scale = pow10(p);
        Fx { lo: div_floor(&min, &scale), hi: div_ceil(&max, &scale) }
    }

    /// Multiply by an exact rational.
    fn scale_rat(&self, r: &BigRational, _p: u32) -> Fx {
        if r.is_zero() {
            return Fx { lo: BigInt::zero(), hi: BigInt::zero() };
        }
        let (a, b) = if r.is_positive() {
            (rat_mul_floor(&self.lo, r), rat_mul_ceil(&self.hi, r))
        } else {
            (rat_mul_floor(&self.hi, r), rat_mul_ceil(&self.lo, r))
        };
        Fx { lo: a, hi: b }
    }

    fn div_uint(&self, n: u64) -> Fx {
        let d = BigInt::from(n);
        Fx { lo: div_floor(&self.lo, &d), hi: div_ceil(&self.hi, &d) }
    }

    fn abs_hi(&self) -> BigInt {
        self.lo.magnitude().max(self.hi.magnitude()).clone().into()
    }

    fn to_rationals(&self, p: u32) -> (BigRational, BigRational) {
        let s = pow10(p);
        (
            BigRational::new(self.lo.clone(), s.clone()),
            BigRational::new(self.hi.clone(), s),
        )
    }
}

fn pow10(p: u32) -> BigInt {
    BigInt::from(10u32).pow(p)
}

fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = num::Integer::div_rem(a, b);
    if r.is_zero() || (r.sign() == b.sign()) {
        q
    } else {
        q - 1
    }
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -div_floor(&-a.clone(), b)
}

fn rat_mul_floor(a: &BigInt, r: &BigRational) -> BigInt {
    div_floor(&(a * r.numer()), r.denom())
}

fn rat_mul_ceil(a: &BigInt, r: &BigRational) -> BigInt {
    div_ceil(&(a * r.numer()), r.denom())
}

fn fx_from_rational(r: &BigRational, p: u32) -> Fx {
    let scaled = r * BigRational::from(pow10(p));
    let lo = div_floor(scaled.numer(), scaled.denom());
    Fx { lo: lo.clone(), hi: lo + if scaled.is_integer() { 0 } else { 1 } }
}

// ---------------------------------------------------------------------------
// pi and the zeta table
// ---------------------------------------------------------------------------

/// atan(1/x) by the alternating Maclaurin series, with the first omitted
/// term as remainder bound.
fn atan_inv_fx(x: u64, p: u32) -> Fx {
    let mut acc = Fx { lo: BigInt::zero(), hi: BigInt::zero() };
    let xx = BigInt::from(x) * BigInt::from(x);
    let mut xpow = BigInt::from(x); // x^{2k+1}
    let mut k = 0u64;
    loop {
        let term = BigRational::new(BigInt::one(), BigInt::from(2 * k + 1) * &xpow);
        let t = fx_from_rational(&term, p);
        if k % 2 == 0 {
            acc = acc.add(&t);
        } else {
            acc = acc.sub(&t);
        }
        // stop when the next term is below one grid unit
        xpow *= &xx;
        let next = BigRational::new(BigInt::one(), BigInt::from(2 * k + 3) * &xpow);
        let bound = fx_from_rational(&next, p);
        if bound.hi <= BigInt::one() {
            return acc.pad(&(bound.hi + BigInt::one()));
        }
        k += 1;
    }
}

fn pi_fx(p: u32) -> Fx {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    let a5 = atan_inv_fx(5, p);
    let a239 = atan_inv_fx(239, p);
    let sixteen = Fx::exact_int(16, 0); // scale-0 integers; emulate via scale_rat
    let _ = sixteen;
    a5.scale_rat(&BigRational::from(BigInt::from(16)), p)
        .sub(&a239.scale_rat(&BigRational::from(BigInt::from(4)), p))
}

/// cos and sin of an interval argument, via Taylor series in interval
/// arithmetic; rigorous for |x| < 2.5 (our arguments are in [0, 2]).
fn cos_sin_fx(x: &Fx, p: u32) -> (Fx, Fx) {
    let x2 = x.mul(x, p);
    let one = Fx::exact_int(1, p);
    let mut cos_acc = one.clone();
    let mut sin_acc = x.clone();
    let mut term_c = one; // x^{2k}/(2k)!
    let mut term_s = x.clone(); // x^{2k+1}/(2k+1)!
    let mut k = 1u64;
    loop {
        term_c = term_c.mul(&x2, p).div_uint((2 * k - 1) * (2 * k));
        term_s = term_s.mul(&x2, p).div_uint((2 * k) * (2 * k + 1));
        if k % 2 == 1 {
            cos_acc = cos_acc.sub(&term_c);
            sin_acc = sin_acc.sub(&term_s);
        } else {
            cos_acc = cos_acc.add(&term_c);
            sin_acc = sin_acc.add(&term_s);
        }
        let next_c = term_c.mul(&x2, p).div_uint((2 * k + 1) * (2 * k + 2));
        let next_s = term_s.mul(&x2, p).div_uint((2 * k + 2) * (2 * k + 3));
        // terms are decreasing from here on; alternating remainder bound
        if k >= 3 && next_c.abs_hi() <= BigInt::one() && next_s.abs_hi() <= BigInt::one() {
            let pad = BigInt::from(2);
            return (cos_acc.pad(&(next_c.abs_hi() + &pad)), sin_acc.pad(&(next_s.abs_hi() + pad)));
        }
        k += 1;
    }
}

struct ZetaTable {
    // (cos, sin) of j*pi/24 for j = 0..15
    entries: Vec<(Fx, Fx)>,
    p: u32,
}

fn zeta_table(p: u32) -> Arc<ZetaTable> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<ZetaTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    if let Some(t) = guard.get(&p) {
        return t.clone();
    }
    let pi = pi_fx(p);
    let mut entries = Vec::with_capacity(16);
    for j in 0..16i64 {
        let theta = pi.scale_rat(&BigRational::new(BigInt::from(j), BigInt::from(24)), p);
        entries.push(cos_sin_fx(&theta, p));
    }
    let t = Arc::new(ZetaTable { entries, p });
    guard.insert(p, t.clone());
    t
}

fn enclose_fx(a: &Cyc, p: u32) -> (Fx, Fx) {
    let table = zeta_table(p);
    let mut re = Fx { lo: BigInt::zero(), hi: BigInt::zero() };
    let mut im = Fx { lo: BigInt::zero(), hi: BigInt::zero() };
    for (j, c) in a.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (cos_j, sin_j) = &table.entries[j];
        re = re.add(&cos_j.scale_rat(c, table.p));
        im = im.add(&sin_j.scale_rat(c, table.p));
    }
    (re, im)
}

// ---------------------------------------------------------------------------
// Public surface
// ---------------------------------------------------------------------------

/// Rigorous rational enclosures of the real and imaginary part, with width
/// below 10^(-digits).
pub fn enclosure_re_im(
    a: &Cyc,
    digits: u32,
) -> ((BigRational, BigRational), (BigRational, BigRational)) {
    let mut p = digits + 8;
    loop {
        let (re, im) = enclose_fx(a, p);
        let budget = pow10(p - digits); // width <= 10^{p-digits} grid units
        if re.width() < budget && im.width() < budget {
            return (re.to_rationals(p), im.to_rationals(p));
        }
        p += 16;
    }
}

/// Exact sign of a real element.  Zero is decided exactly in the field;
/// otherwise the interval is refined until it excludes zero.
pub fn real_sign(a: &Cyc) -> Result<Ordering> {
    if !a.is_real() {
        return Err(Error::Contract(
            "real_sign called on an element with nonzero imaginary part".into(),
        ));
    }
    if a.is_zero() {
        return Ok(Ordering::Equal);
    }
    let mut p = 32u32;
    while p <= 4096 {
        let (re, _) = enclose_fx(a, p);
        if re.lo.is_positive() {
            return Ok(Ordering::Greater);
        }
        if re.hi.is_negative() {
            return Ok(Ordering::Less);
        }
        p *= 2;
    }
    Err(Error::Contract(
        "sign of nonzero element undecided at 4096 digits (should be impossible)".into(),
    ))
}

/// Correctly-rounded decimal strings (re, im) with error below 10^(-digits).
pub fn approximate(a: &Cyc, digits: u32) -> (String, String) {
    let ((rlo, rhi), (ilo, ihi)) = enclosure_re_im(a, digits + 2);
    let two = BigRational::from(BigInt::from(2));
    let rmid = (rlo + rhi) / &two;
    let imid = (ilo + ihi) / &two;
    (format_fixed(&rmid, digits), format_fixed(&imid, digits))
}

/// Format a rational as a fixed-point decimal with `digits` places.
pub fn format_fixed(r: &BigRational, digits: u32) -> String {
    let scaled = r * BigRational::from(pow10(digits));
    let n = scaled.round().to_integer();
    let neg = n.is_negative();
    let mag = n.magnitude().to_string();
    let d = digits as usize;
    let padded = if mag.len() <= d {
        format!("{}{}", "0".repeat(d + 1 - mag.len()), mag)
    } else {
        mag
    };
    let (int_part, frac_part) = padded.split_at(padded.len() - d);
    let body = if d == 0 {
        int_part.to_string()
    } else {
        format!("{int_part}.{frac_part}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{constant, Constant, Cyc};

    #[test]
    fn known_decimals() {
        let (re, im) = approximate(&constant(Constant::XCritical), 6);
        assert_eq!(re, "0.541196");
        assert_eq!(im, "0.000000");
        let (re, _) = approximate(&constant(Constant::Cos3Pi8), 6);
        assert_eq!(re, "0.382683");
        let (re, im) = approximate(&constant(Constant::ImagUnit), 6);
        assert_eq!(re, "0.000000");
        assert_eq!(im, "1.000000");
        let (re, _) = approximate(&constant(Constant::Sqrt3), 10);
        assert_eq!(re, "1.7320508076");
    }

    #[test]
    fn signs() {
        use std::cmp::Ordering::*;
        let xc = constant(Constant::XCritical);
        assert_eq!(real_sign(&xc).unwrap(), Greater);
        assert_eq!(real_sign(&(&xc - &Cyc::one())).unwrap(), Less);
        assert_eq!(real_sign(&(&xc - &xc)).unwrap(), Equal);
        // tiny but nonzero: mu^2 - 2 - sqrt2 + 1/10^30
        let tiny = Cyc::from_rational(num::rational::BigRational::new(
            num::BigInt::from(1),
            num::BigInt::from(10u8).pow(30),
        ));
        assert_eq!(real_sign(&tiny).unwrap(), Greater);
        assert!(real_sign(&constant(Constant::ImagUnit)).is_err());
    }

    #[test]
    fn imaginary_parts_of_real_constants_vanish() {
        for c in [Constant::XCritical, Constant::Mu, Constant::CosPi8, Constant::Sqrt3] {
            let (_, im) = approximate(&constant(c), 12);
            assert_eq!(im, "0.000000000000");
        }
    }
}
