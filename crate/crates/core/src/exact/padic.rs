//! Residues modulo p^k: fixed-precision truncations of p-adic integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::rational::{self, Rational};
use crate::error::{Error, Result};

const MAX_MODULUS: u128 = 1 << 62;

/// `residue` in `[0, p^k)`, standing for a p-adic integer known mod `p^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicResidue {
    prime: u64,
    precision: u32,
    modulus: u64,
    residue: u64,
}

/// `p^k`, if it fits the supported range.
pub fn prime_power(p: u64, k: u32) -> Result<u64> {
    let mut m: u128 = 1;
    for _ in 0..k {
        m *= p as u128;
        if m >= MAX_MODULUS {
            return Err(Error::PrecisionTooLarge { p, k });
        }
    }
    Ok(m as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PadicResidue {
    pub fn new(prime: u64, precision: u32, value: i128) -> Result<Self> {
        if prime == 2 || !is_prime(prime) {
            return Err(Error::InvalidArgument(format!("{prime} is not an odd prime")));
        }
        if precision == 0 {
            return Err(Error::InvalidArgument("p-adic precision must be >= 1".into()));
        }
        let modulus = prime_power(prime, precision)?;
        Ok(Self::with_modulus(prime, precision, modulus, value))
    }

    fn with_modulus(prime: u64, precision: u32, modulus: u64, value: i128) -> Self {
        PadicResidue { prime, precision, modulus, residue: value.rem_euclid(modulus as i128) as u64 }
    }

    fn same(&self, value: u64) -> Self {
        PadicResidue { residue: value, ..*self }
    }

    /// Embeds a rational with denominator prime to `p`; a ring homomorphism.
    pub fn from_rational(r: &Rational, prime: u64, precision: u32) -> Result<Self> {
        let zero = Self::new(prime, precision, 0)?;
        zero.embed(r)
    }

    /// Embeds `r` at this residue's prime and precision.
    pub fn embed(&self, r: &Rational) -> Result<Self> {
        if !rational::is_p_integral(r, self.prime) {
            return Err(Error::NonIntegral { value: rational::format(r), p: self.prime });
        }
        let m = BigInt::from(self.modulus);
        let n = r.numer().mod_floor(&m).to_u64().expect("reduced below modulus");
        let d = r.denom().mod_floor(&m).to_u64().expect("reduced below modulus");
        let d_inv = self.same(d).inverse()?;
        Ok(self.same(n).mul(&d_inv))
    }

    pub fn embed_int(&self, v: i128) -> Self {
        Self::with_modulus(self.prime, self.precision, self.modulus, v)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn zero(&self) -> Self {
        self.same(0)
    }

    pub fn one(&self) -> Self {
        self.same(1 % self.modulus)
    }

    fn check(&self, other: &Self) {
        assert!(
            self.prime == other.prime && self.precision == other.precision,
            "p-adic residues at different precisions"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        self.same(((self.residue as u128 + other.residue as u128) % self.modulus as u128) as u64)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        self.same(((self.residue as u128 + self.modulus as u128 - other.residue as u128) % self.modulus as u128) as u64)
    }

    pub fn neg(&self) -> Self {
        self.same((self.modulus - self.residue) % self.modulus)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        self.same(((self.residue as u128 * other.residue as u128) % self.modulus as u128) as u64)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = self.one();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            base = base.mul(&base);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    pub fn is_unit(&self) -> bool {
        !self.residue.is_multiple_of(self.prime)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotAUnit(self.to_string()));
        }
        let g = (self.residue as i128).extended_gcd(&(self.modulus as i128));
        Ok(self.embed_int(g.x))
    }

    /// p-adic valuation of the residue, capped at the precision `k`.
    pub fn valuation(&self) -> u32 {
        if self.residue == 0 {
            return self.precision;
        }
        let mut v = 0;
        let mut r = self.residue;
        while r.is_multiple_of(self.prime) {
            r /= self.prime;
            v += 1;
        }
        v
    }

    /// Primitive `m`-th root of unity in Z_p (Teichmuller lift), for `m | p - 1`.
    pub fn root_of_unity(&self, m: u64) -> Result<Self> {
        let p = self.prime;
        if !(p - 1).is_multiple_of(m) {
            return Err(Error::CharacterOrderUnsupported { order: m, p });
        }
        let g = primitive_root_mod_prime(p);
        let mut w = self.embed_int(g as i128).pow((p - 1) / m);
        // x -> x^p converges to the Teichmuller representative, one digit per step.
        for _ in 0..self.precision {
            w = w.pow(p);
        }
        Ok(w)
    }
}

fn primitive_root_mod_prime(p: u64) -> u64 {
    let phi = p - 1;
    let factors: Vec<u64> = (2..=phi).filter(|&r| phi.is_multiple_of(r) && is_prime(r)).collect();
    (2..p)
        .find(|&g| {
            factors.iter().all(|&r| {
                let mut acc: u128 = 1;
                let mut base = g as u128;
                let mut e = phi / r;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % p as u128;
                    }
                    base = base * base % p as u128;
                    e >>= 1;
                }
                acc != 1
            })
        })
        .unwrap_or(1)
}

impl fmt::Display for PadicResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.residue, self.prime, self.precision)
    }
}

/// `v_p(n)` for a nonzero integer.
pub fn valuation_of(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut n = n.clone();
    while n.is_multiple_of(&p) {
        n /= &p;
        v += 1;
    }
    Some(v)
}
