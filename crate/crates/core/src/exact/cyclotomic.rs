//! Exact arithmetic in Q(zeta_m), represented modulo the m-th cyclotomic
//! polynomial.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::PolyQ;
use super::rational::{self, Rational};
use crate::error::{Error, Result};
use crate::numeric::{Bound, Mp, MpComplex};

/// `Phi_m`, by dividing `x^m - 1` by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(m: u64) -> PolyQ {
    assert!(m >= 1, "cyclotomic polynomial index must be positive");
    let mut p = &PolyQ::monomial(Rational::one(), m as usize) - &PolyQ::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        let (q, r) = p.div_rem(&cyclotomic_polynomial(d)).expect("cyclotomic divisor is nonzero");
        debug_assert!(r.is_zero());
        p = q;
    }
    p
}

/// Euler's totient.
pub fn totient(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The field Q(zeta_m) with its defining polynomial.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    order: u64,
    modulus: PolyQ,
}

impl CyclotomicField {
    pub fn new(order: u64) -> Arc<Self> {
        Arc::new(CyclotomicField { order, modulus: cyclotomic_polynomial(order) })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn modulus(&self) -> &PolyQ {
        &self.modulus
    }
}

/// Element of Q(zeta_m); exactly `deg Phi_m` coefficients.
#[derive(Clone, Debug)]
pub struct CycElem {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for CycElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for CycElem {}

impl CycElem {
    pub fn reduce(field: &Arc<CyclotomicField>, raw: &PolyQ) -> Self {
        CycElem { field: field.clone(), coeffs: PolyQ::rem_monic(raw.coeffs().to_vec(), &field.modulus) }
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, r: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); field.degree()];
        coeffs[0] = r;
        CycElem { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Self::from_rational(field, Rational::zero())
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    /// `zeta_m^j`.
    pub fn zeta_power(field: &Arc<CyclotomicField>, j: u64) -> Self {
        let j = (j % field.order) as usize;
        Self::reduce(field, &PolyQ::monomial(Rational::one(), j))
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> u64 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> PolyQ {
        PolyQ::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value when it lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_field(&self, other: &Self) {
        assert_eq!(self.field.order, other.field.order, "cyclotomic elements from different fields; lift first");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_field(other);
        CycElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_field(other);
        CycElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CycElem { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CycElem { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_field(other);
        let deg = self.coeffs.len();
        if deg == 1 {
            return CycElem { field: self.field.clone(), coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] };
        }
        let mut prod = vec![Rational::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CycElem { field: self.field.clone(), coeffs: PolyQ::rem_monic(prod, &self.field.modulus) }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotAUnit("zero cyclotomic element".into()));
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(&self.field, r.recip()));
        }
        let (g, s) = self.to_poly().gcd_cofactor(&self.field.modulus)?;
        if g != PolyQ::one() {
            return Err(Error::NotAUnit(self.to_string()));
        }
        Ok(Self::reduce(&self.field, &s))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Image under `zeta_m -> zeta_M^{M/m}` in the larger field `Q(zeta_M)`.
    pub fn lift(&self, target: &Arc<CyclotomicField>) -> Self {
        assert!(
            target.order.is_multiple_of(self.field.order),
            "cannot lift Q(zeta_{}) into Q(zeta_{})",
            self.field.order,
            target.order
        );
        if target.order == self.field.order {
            return self.clone();
        }
        let k = (target.order / self.field.order) as usize;
        Self::reduce(target, &self.to_poly().inflate(k))
    }

    /// Complex conjugate (`zeta -> zeta^{-1}`).
    pub fn conj(&self) -> Self {
        let m = self.field.order as usize;
        let mut raw = vec![Rational::zero(); m];
        for (j, c) in self.coeffs.iter().enumerate() {
            raw[(m - j) % m] += c;
        }
        Self::reduce(&self.field, &PolyQ::new(raw))
    }

    /// Numeric value at `zeta_m = e^{2 pi i / m}`, with error below `2^{1-bits}`
    /// in each part.
    pub fn embed(&self, bits: u32) -> MpComplex {
        let (v, _) = self.embed_with_bound(bits);
        v
    }

    pub(crate) fn embed_with_bound(&self, bits: u32) -> (MpComplex, Bound) {
        let size = self.coeffs.iter().map(rational::log2_abs).fold(f64::NEG_INFINITY, f64::max);
        let guard = (size.max(0.0).ceil() as usize) + 32 + (self.coeffs.len() as f64).log2().ceil() as usize;
        let mut mp = Mp::new(bits as usize + guard);
        let v = self.embed_in(&mut mp);
        let err = Bound::pow2(-(mp.prec() as f64) + size.max(0.0) + 8.0 + (self.coeffs.len() as f64).log2());
        (v, err)
    }

    pub(crate) fn embed_in(&self, mp: &mut Mp) -> MpComplex {
        let m = self.field.order;
        let mut acc = MpComplex::zero(mp);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = mp.root_of_unity(j as u64, m);
            let cf = mp.rational(c);
            acc = mp.cadd(&acc, &mp.cscale(&z, &cf));
        }
        acc
    }
}

impl fmt::Display for CycElem {
    /// Lossless form `[(c0),(c1),...]@zetaM`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| format!("({})", rational::format(c))).collect();
        write!(f, "[{}]@zeta{}", parts.join(","), self.field.order)
    }
}

/// Parses the form produced by `Display`.
pub fn parse_cyc(s: &str) -> Result<CycElem> {
    let bad = || Error::InvalidArgument(format!("not a cyclotomic element: {s:?}"));
    let (body, m) = s.trim().rsplit_once("]@zeta").ok_or_else(bad)?;
    let m: u64 = m.parse().map_err(|_| bad())?;
    let body = body.strip_prefix('[').ok_or_else(bad)?;
    let coeffs = body
        .split(',')
        .map(|c| {
            let c = c.trim().strip_prefix('(').and_then(|c| c.strip_suffix(')')).ok_or_else(bad)?;
            rational::parse(c)
        })
        .collect::<Result<Vec<_>>>()?;
    let field = CyclotomicField::new(m);
    if coeffs.len() != field.degree() {
        return Err(bad());
    }
    Ok(CycElem { field, coeffs })
}

/// Reduces a raw polynomial into Q(zeta_m).
pub fn cyc_reduce(raw: &PolyQ, m: u64) -> CycElem {
    CycElem::reduce(&CyclotomicField::new(m), raw)
}

/// Numeric embedding at the principal root of unity.
pub fn cyc_embed(e: &CycElem, bits: u32) -> MpComplex {
    e.embed(bits.max(16))
}
