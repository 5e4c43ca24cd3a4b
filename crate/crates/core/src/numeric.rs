//! Multiprecision real/complex arithmetic with explicit working precision,
//! and upper bounds kept in the log2 domain.

use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::Rational;

const RM: RoundingMode = RoundingMode::ToEven;

/// Working-precision context. Holds the constant cache the transcendental
/// functions need; one context per evaluation, never shared.
pub struct Mp {
    prec: usize,
    cc: Consts,
}

impl fmt::Debug for Mp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Mp").field("prec", &self.prec).finish()
    }
}

impl Mp {
    pub fn new(prec: usize) -> Self {
        Mp { prec: prec.max(64), cc: Consts::new().expect("constant cache allocation") }
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat::from_i64(0, self.prec)
    }

    pub fn int(&self, v: i64) -> BigFloat {
        BigFloat::from_i64(v, self.prec)
    }

    pub fn big(&self, v: &BigInt) -> BigFloat {
        let x = bigint_exact(v);
        let mut r = x.clone();
        if r.set_precision(self.prec, RM).is_err() {
            return x;
        }
        r
    }

    pub fn rational(&self, r: &Rational) -> BigFloat {
        let n = bigint_exact(r.numer());
        let d = bigint_exact(r.denom());
        n.div(&d, self.prec, RM)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.prec, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.prec, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.prec, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.prec, RM)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.prec, RM)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.prec, RM, &mut self.cc)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.prec, RM, &mut self.cc)
    }

    pub fn sin(&mut self, a: &BigFloat) -> BigFloat {
        a.sin(self.prec, RM, &mut self.cc)
    }

    pub fn cos(&mut self, a: &BigFloat) -> BigFloat {
        a.cos(self.prec, RM, &mut self.cc)
    }

    pub fn sinh(&mut self, a: &BigFloat) -> BigFloat {
        a.sinh(self.prec, RM, &mut self.cc)
    }

    pub fn cosh(&mut self, a: &BigFloat) -> BigFloat {
        a.cosh(self.prec, RM, &mut self.cc)
    }

    pub fn atan(&mut self, a: &BigFloat) -> BigFloat {
        a.atan(self.prec, RM, &mut self.cc)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.prec, RM)
    }

    /// `2^e` exactly.
    pub fn pow2(&self, e: i32) -> BigFloat {
        let mut one = BigFloat::from_words(&[1u64 << 63], Sign::Pos, 1);
        one.set_exponent(e + 1);
        one
    }

    /// `e^{i theta}`.
    pub fn cis(&mut self, theta: &BigFloat) -> MpComplex {
        MpComplex { re: self.cos(theta), im: self.sin(theta) }
    }

    /// `e^{2 pi i j / m}`.
    pub fn root_of_unity(&mut self, j: u64, m: u64) -> MpComplex {
        let j = j % m;
        if j == 0 {
            return MpComplex::real(self.int(1), self);
        }
        if 4 * j == m {
            return MpComplex::new(self.zero(), self.int(1));
        }
        if 2 * j == m {
            return MpComplex::real(self.int(-1), self);
        }
        if 4 * j == 3 * m {
            return MpComplex::new(self.zero(), self.int(-1));
        }
        let pi = self.pi();
        let two_pi = self.mul(&pi, &self.int(2));
        let theta = self.div(&self.mul(&two_pi, &self.int(j as i64)), &self.int(m as i64));
        self.cis(&theta)
    }

    pub fn cadd(&self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        MpComplex::new(self.add(&a.re, &b.re), self.add(&a.im, &b.im))
    }

    pub fn csub(&self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        MpComplex::new(self.sub(&a.re, &b.re), self.sub(&a.im, &b.im))
    }

    pub fn cmul(&self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        let re = self.sub(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im));
        let im = self.add(&self.mul(&a.re, &b.im), &self.mul(&a.im, &b.re));
        MpComplex::new(re, im)
    }

    pub fn cscale(&self, a: &MpComplex, c: &BigFloat) -> MpComplex {
        MpComplex::new(self.mul(&a.re, c), self.mul(&a.im, c))
    }

    pub fn cdiv(&self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        let den = self.add(&self.mul(&b.re, &b.re), &self.mul(&b.im, &b.im));
        let re = self.add(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im));
        let im = self.sub(&self.mul(&a.im, &b.re), &self.mul(&a.re, &b.im));
        MpComplex::new(self.div(&re, &den), self.div(&im, &den))
    }

    pub fn cabs(&self, a: &MpComplex) -> BigFloat {
        self.sqrt(&self.add(&self.mul(&a.re, &a.re), &self.mul(&a.im, &a.im)))
    }

    pub fn cexp(&mut self, a: &MpComplex) -> MpComplex {
        let r = self.exp(&a.re);
        let c = self.cis(&a.im);
        self.cscale(&c, &r)
    }

    /// Principal logarithm of a nonzero complex number.
    pub fn cln(&mut self, a: &MpComplex) -> MpComplex {
        let modulus = self.cabs(a);
        let re = self.ln(&modulus);
        let im = self.arg(a);
        MpComplex::new(re, im)
    }

    /// Principal argument in (-pi, pi].
    pub fn arg(&mut self, a: &MpComplex) -> BigFloat {
        let pi = self.pi();
        if a.re.is_zero() {
            let half = self.div(&pi, &self.int(2));
            return if a.im.is_negative() { half.neg() } else { half };
        }
        let base = self.atan(&self.div(&a.im, &a.re));
        if a.re.is_positive() {
            base
        } else if a.im.is_negative() {
            self.sub(&base, &pi)
        } else {
            self.add(&base, &pi)
        }
    }

    /// `base^s` for a real `base > 0`.
    pub fn real_pow_complex(&mut self, base: &BigFloat, s: &MpComplex) -> MpComplex {
        let l = self.ln(base);
        let e = MpComplex::new(self.mul(&s.re, &l), self.mul(&s.im, &l));
        self.cexp(&e)
    }

    pub fn complex_from(&self, z: &ExactComplex) -> MpComplex {
        MpComplex::new(self.rational(&z.re), self.rational(&z.im))
    }
}

fn bigint_exact(v: &BigInt) -> BigFloat {
    if v.is_zero() {
        return BigFloat::from_i64(0, 64);
    }
    let sign = if v.is_negative() { Sign::Neg } else { Sign::Pos };
    let mag = v.magnitude();
    let bits = mag.bits();
    let lz = (64 - bits % 64) % 64;
    let shifted = mag << lz;
    let words = shifted.to_u64_digits();
    BigFloat::from_words(&words, sign, bits as i32)
}

/// `log2 |x|` to about 60 bits; `-inf` for zero.
pub fn log2_abs(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let e = x.exponent().unwrap_or(0) as f64;
    let top = x.mantissa_digits().and_then(|m| m.last().copied()).unwrap_or(1u64 << 63);
    e + ((top as f64) / 18446744073709551616.0).log2()
}

pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let l = log2_abs(x);
    if l > 1000.0 {
        return if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    if l < -1000.0 {
        return 0.0;
    }
    let v = 2f64.powf(l);
    if x.is_negative() {
        -v
    } else {
        v
    }
}

/// Decimal rendering rounded to `digits` significant digits; positional for
/// moderate exponents, scientific otherwise.
pub fn to_decimal(x: &BigFloat, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut cc = Consts::new().expect("constant cache allocation");
    let s = match x.format(Radix::Dec, RM, &mut cc) {
        Ok(s) => s,
        Err(_) => return "NaN".to_string(),
    };
    let (mantissa, exponent) = s.split_once('e').unwrap_or((&s, "0"));
    let exponent: i64 = exponent.trim_start_matches('+').parse().unwrap_or(0);
    let neg = mantissa.starts_with('-');
    let body = mantissa.trim_start_matches('-');
    let (int_part, frac) = body.split_once('.').unwrap_or((body, ""));
    let mut ds: Vec<u8> = int_part.bytes().chain(frac.bytes()).map(|c| c - b'0').collect();
    // value = 0.ds * 10^point
    let mut point = exponent + int_part.len() as i64;
    let lead = ds.iter().take_while(|&&d| d == 0).count();
    ds.drain(..lead);
    point -= lead as i64;
    if ds.is_empty() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    if ds.len() > digits {
        let up = ds[digits] >= 5;
        ds.truncate(digits);
        if up {
            let mut i = digits;
            loop {
                if i == 0 {
                    ds.insert(0, 1);
                    ds.pop();
                    point += 1;
                    break;
                }
                i -= 1;
                if ds[i] == 9 {
                    ds[i] = 0;
                } else {
                    ds[i] += 1;
                    break;
                }
            }
        }
    }
    while ds.len() > 1 && ds.last() == Some(&0) {
        ds.pop();
    }
    let text: String = ds.iter().map(|d| (b'0' + d) as char).collect();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if !(-20..=40).contains(&point) {
        out.push_str(&text[..1]);
        if text.len() > 1 {
            out.push('.');
            out.push_str(&text[1..]);
        }
        out.push_str(&format!("e{}", point - 1));
    } else if point <= 0 {
        out.push_str("0.");
        out.push_str(&"0".repeat((-point) as usize));
        out.push_str(&text);
    } else if text.len() as i64 <= point {
        out.push_str(&text);
        out.push_str(&"0".repeat((point - text.len() as i64) as usize));
    } else {
        out.push_str(&text[..point as usize]);
        out.push('.');
        out.push_str(&text[point as usize..]);
    }
    out
}

/// Complex number with multiprecision parts.
#[derive(Clone, Debug)]
pub struct MpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl MpComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        MpComplex { re, im }
    }

    pub fn real(re: BigFloat, mp: &Mp) -> Self {
        MpComplex { re, im: mp.zero() }
    }

    pub fn zero(mp: &Mp) -> Self {
        MpComplex::new(mp.zero(), mp.zero())
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (to_f64(&self.re), to_f64(&self.im))
    }

    /// `re,im` rendering with `digits` significant digits per part.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.im.is_zero() {
            return to_decimal(&self.re, digits);
        }
        format!(
            "{}{}{}i",
            to_decimal(&self.re, digits),
            if self.im.is_negative() { "" } else { "+" },
            to_decimal(&self.im, digits)
        )
    }

    /// Upper estimate of `log2 |self|` via the max-norm times sqrt 2.
    pub fn log2_abs(&self) -> f64 {
        let m = log2_abs(&self.re).max(log2_abs(&self.im));
        if m == f64::NEG_INFINITY {
            m
        } else {
            m + 0.5
        }
    }
}

/// Complex number with exact rational parts (used for exact inputs such as `s`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactComplex {
    pub re: Rational,
    pub im: Rational,
}

impl ExactComplex {
    pub fn real(re: Rational) -> Self {
        ExactComplex { re, im: Rational::zero() }
    }

    pub fn new(re: Rational, im: Rational) -> Self {
        ExactComplex { re, im }
    }

    /// `Some(k)` when the value is the integer `k`.
    pub fn as_integer(&self) -> Option<i64> {
        if !self.im.is_zero() || !self.re.is_integer() {
            return None;
        }
        num_traits::ToPrimitive::to_i64(self.re.numer())
    }

    /// Parses `a/b` or `a/b,c/d` (real part, imaginary part).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once(',') {
            Some((re, im)) => {
                Ok(ExactComplex::new(crate::exact::rational::parse(re)?, crate::exact::rational::parse(im)?))
            }
            None => Ok(ExactComplex::real(crate::exact::rational::parse(s)?)),
        }
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", crate::exact::rational::format(&self.re))
        } else {
            write!(f, "{},{}", crate::exact::rational::format(&self.re), crate::exact::rational::format(&self.im))
        }
    }
}

/// Nonnegative upper bound stored as `log2` of its value.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Bound {
    log2: f64,
}

impl Bound {
    pub const ZERO: Bound = Bound { log2: f64::NEG_INFINITY };

    pub fn from_log2(log2: f64) -> Self {
        Bound { log2 }
    }

    pub fn pow2(e: f64) -> Self {
        Bound { log2: e }
    }

    pub fn log2(&self) -> f64 {
        self.log2
    }

    pub fn is_zero(&self) -> bool {
        self.log2 == f64::NEG_INFINITY
    }

    /// Upper bound for the sum; rounds up by a relative 2^-40.
    pub fn plus(self, other: Bound) -> Bound {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (hi, lo) = if self.log2 >= other.log2 { (self.log2, other.log2) } else { (other.log2, self.log2) };
        Bound { log2: hi + (1.0 + 2f64.powf(lo - hi)).log2() + 1e-12 }
    }

    pub fn times_log2(self, log2_factor: f64) -> Bound {
        if self.is_zero() {
            return self;
        }
        Bound { log2: self.log2 + log2_factor }
    }

    /// True when `log2_value <= bound` (with `-inf` for an exact zero).
    pub fn admits(&self, log2_value: f64) -> bool {
        log2_value == f64::NEG_INFINITY || log2_value <= self.log2
    }

    pub fn to_f64(&self) -> f64 {
        2f64.powf(self.log2)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "2^{:.2}", self.log2)
        }
    }
}

pub(crate) fn check_bits(bits: u32, min: u32) -> Result<()> {
    if bits < min {
        return Err(Error::InvalidArgument(format!("bits must be >= {min}, got {bits}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn exact_bigint_conversion() {
        let mp = Mp::new(256);
        let v = BigInt::from(3).pow(100);
        let f = mp.big(&v);
        let back = mp.div(&f, &mp.big(&BigInt::from(3).pow(99)));
        assert!(log2_abs(&mp.sub(&back, &mp.int(3))) < -200.0);
        assert_eq!(to_f64(&mp.rational(&rat(-7, 2))), -3.5);
        assert_eq!(to_f64(&mp.big(&BigInt::from(-1))), -1.0);
    }

    #[test]
    fn roots_of_unity() {
        let mut mp = Mp::new(128);
        let w = mp.root_of_unity(1, 3);
        let w2 = mp.root_of_unity(2, 3);
        let s = mp.cadd(&mp.cadd(&w, &w2), &MpComplex::real(mp.int(1), &mp));
        assert!(s.log2_abs() < -120.0);
        let i = mp.root_of_unity(1, 4);
        assert_eq!(i.to_f64_pair(), (0.0, 1.0));
    }

    #[test]
    fn bound_arithmetic() {
        let a = Bound::pow2(-10.0).plus(Bound::pow2(-10.0));
        assert!((a.log2() + 9.0).abs() < 1e-9);
        assert!(Bound::ZERO.plus(Bound::pow2(3.0)) == Bound::pow2(3.0));
        assert!(Bound::pow2(-3.0).admits(-4.0));
        assert!(!Bound::pow2(-3.0).admits(-2.5));
    }

    #[test]
    fn decimal_rendering() {
        let mp = Mp::new(128);
        assert_eq!(to_decimal(&mp.int(-4), 10), "-4");
        assert_eq!(to_decimal(&mp.rational(&rat(1, 8)), 10), "0.125");
        assert_eq!(to_decimal(&mp.rational(&rat(2, 3)), 5), "0.66667");
        assert_eq!(to_decimal(&mp.int(1000), 10), "1000");
        assert_eq!(to_decimal(&mp.rational(&rat(-9999999, 1000)), 3), "-10000");
        assert_eq!(to_decimal(&mp.pow2(-100), 4), "7.889e-31");
        let _ = int(0);
    }

    #[test]
    fn complex_log_exp() {
        let mut mp = Mp::new(160);
        let z = MpComplex::new(mp.int(-2), mp.rational(&rat(1, 3)));
        let l = mp.cln(&z);
        let back = mp.cexp(&l);
        assert!(mp.csub(&back, &z).log2_abs() < -150.0);
    }
}
