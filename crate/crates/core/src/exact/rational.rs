//! Helpers around the arbitrary-precision rational type.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn big(v: &BigInt) -> Rational {
    Rational::from_integer(v.clone())
}

/// `r^e` for any integer exponent. Panics on `0^e` with `e < 0`.
pub fn pow(r: &Rational, e: i64) -> Rational {
    if e < 0 {
        assert!(!r.is_zero(), "zero raised to a negative power");
        return pow(&r.recip(), -e);
    }
    let mut base = r.clone();
    let mut acc = Rational::one();
    let mut e = e as u64;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Canonical lossless rendering, always `a/b` (e.g. `-4/1`).
pub fn format(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `a`, `-a`, `a/b`.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Binomial coefficient C(n, k) as a rational.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    big(&num_integer::binomial(BigInt::from(n), BigInt::from(k)))
}

/// Row `C(n, 0..=n)`.
pub fn binomial_row(n: usize) -> Vec<Rational> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    row.push(big(&c));
    for k in 1..=n {
        c = c * BigInt::from(n - k + 1) / BigInt::from(k);
        row.push(big(&c));
    }
    row
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Largest power of `p` dividing the denominator is zero.
pub fn is_p_integral(r: &Rational, p: u64) -> bool {
    !r.denom().is_multiple_of(&BigInt::from(p))
}

pub fn sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

/// Upper bound on `log2 |r|`; `-inf` for zero.
pub fn log2_abs(r: &Rational) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    log2_big(r.numer()) - log2_big(r.denom())
}

pub(crate) fn log2_big(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        let f: f64 = num_traits::ToPrimitive::to_f64(&v.abs()).unwrap_or(f64::INFINITY);
        return f.log2();
    }
    let shift = bits - 64;
    let top: BigInt = v.abs() >> shift;
    let f: f64 = num_traits::ToPrimitive::to_f64(&top).unwrap_or(f64::INFINITY);
    f.log2() + shift as f64
}

pub fn to_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}
