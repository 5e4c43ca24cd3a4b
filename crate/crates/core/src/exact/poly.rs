//! Dense univariate polynomials over Q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// Dense polynomial, coefficient index = degree. The highest stored
/// coefficient is nonzero unless the polynomial is zero (empty vector).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyQ {
    coeffs: Vec<Rational>,
}

impl PolyQ {
    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolyQ { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `x -> x^k`.
    pub fn inflate(&self, k: usize) -> Self {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut coeffs = vec![Rational::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::new(coeffs)
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &PolyQ) -> Result<(PolyQ, PolyQ)> {
        let dd = divisor.degree().ok_or_else(|| Error::InvalidArgument("polynomial division by zero".into()))?;
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((PolyQ::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((PolyQ::new(quot), PolyQ::new(rem)))
    }

    /// Remainder modulo a monic polynomial, without building the quotient.
    pub(crate) fn rem_monic(mut coeffs: Vec<Rational>, modulus: &PolyQ) -> Vec<Rational> {
        let dd = modulus.coeffs.len() - 1;
        debug_assert!(modulus.coeffs[dd].is_one());
        if coeffs.len() > dd {
            for i in (dd..coeffs.len()).rev() {
                let c = std::mem::take(&mut coeffs[i]);
                if c.is_zero() {
                    continue;
                }
                for (j, mc) in modulus.coeffs[..dd].iter().enumerate() {
                    if !mc.is_zero() {
                        coeffs[i - dd + j] -= &c * mc;
                    }
                }
            }
        }
        coeffs.resize(dd, Rational::zero());
        coeffs
    }

    /// Returns `(g, s)` with `g = gcd(self, other)` monic and
    /// `s * self = g (mod other)`.
    pub fn gcd_cofactor(&self, other: &PolyQ) -> Result<(PolyQ, PolyQ)> {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (PolyQ::one(), PolyQ::zero());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        match r0.leading().cloned() {
            None => Ok((PolyQ::zero(), PolyQ::zero())),
            Some(lc) => {
                let inv = lc.recip();
                Ok((r0.scale(&inv), s0.scale(&inv)))
            }
        }
    }
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyQ::new(out)
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PolyQ {
            type Output = PolyQ;
            fn $m(self, rhs: PolyQ) -> PolyQ {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
