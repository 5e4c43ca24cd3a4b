//! Dirichlet characters of odd modulus with exact values in Q(zeta_m).

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exact::cyclotomic::totient;
use crate::exact::{CycElem, CyclotomicField};

/// Cyclic decomposition of `(Z/dZ)^*` with a discrete-log table.
#[derive(Debug, PartialEq, Eq)]
pub struct UnitGroupStructure {
    modulus: u64,
    generators: Vec<u64>,
    orders: Vec<u64>,
    // dlog[a] is the exponent tuple of a, or None for non-units.
    dlog: Vec<Option<Vec<u64>>>,
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mult_order(g: u64, m: u64) -> u64 {
    let mut x = g % m;
    let mut k = 1;
    while x != 1 % m {
        x = mul_mod(x, g, m);
        k += 1;
    }
    k
}

fn check_modulus(d: u64) -> Result<()> {
    if d == 0 {
        return Err(Error::ZeroModulus);
    }
    if d.is_multiple_of(2) {
        return Err(Error::EvenModulus(d));
    }
    Ok(())
}

/// Builds the unit group of `Z/dZ` for odd `d`: one generator per prime power,
/// the smallest primitive root there, lifted by CRT (1 at the other primes).
pub fn unit_group(d: u64) -> Result<UnitGroupStructure> {
    check_modulus(d)?;
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    for (p, e) in factor(d) {
        let pe = p.pow(e);
        let phi = pe / p * (p - 1);
        let g =
            (2..pe).find(|&g| g % p != 0 && mult_order(g, pe) == phi).expect("odd prime powers have primitive roots");
        let rest = d / pe;
        // G = g mod pe, 1 mod rest
        let lifted = if rest == 1 {
            g
        } else {
            let inv = (rest as i128).extended_gcd(&(pe as i128)).x.rem_euclid(pe as i128) as u64;
            let t = mul_mod((g + pe - 1) % pe, inv, pe);
            (1 + t as u128 * rest as u128) as u64 % d
        };
        generators.push(lifted);
        orders.push(phi);
    }
    let mut dlog = vec![None; d as usize];
    let mut exps = vec![0u64; orders.len()];
    loop {
        let a = generators.iter().zip(&exps).fold(1 % d, |acc, (&g, &e)| (0..e).fold(acc, |x, _| mul_mod(x, g, d)));
        debug_assert!(dlog[a as usize].is_none());
        dlog[a as usize] = Some(exps.clone());
        if !next_tuple(&mut exps, &orders) {
            break;
        }
    }
    Ok(UnitGroupStructure { modulus: d, generators, orders, dlog })
}

// Lexicographic successor with the first component most significant.
fn next_tuple(t: &mut [u64], bounds: &[u64]) -> bool {
    for i in (0..t.len()).rev() {
        t[i] += 1;
        if t[i] < bounds[i] {
            return true;
        }
        t[i] = 0;
    }
    false
}

impl UnitGroupStructure {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn phi(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Exponent tuple of `a`, or `None` when `a` is not a unit.
    pub fn dlog(&self, a: i64) -> Option<&[u64]> {
        let r = a.rem_euclid(self.modulus as i64) as usize;
        self.dlog[r].as_deref()
    }
}

/// A character mod `d`, named by its exponent tuple against the generators.
#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<UnitGroupStructure>,
    exponents: Vec<u64>,
    index: usize,
    order: u64,
    field: Arc<CyclotomicField>,
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi[{}.{} {:?}]", self.modulus(), self.index, self.exponents)
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.modulus(), self.index)
    }
}

impl DirichletCharacter {
    fn build(group: Arc<UnitGroupStructure>, exponents: Vec<u64>, index: usize) -> Self {
        let order = group.orders.iter().zip(&exponents).fold(1u64, |acc, (&o, &e)| acc.lcm(&(o / o.gcd(&e))));
        DirichletCharacter { group, exponents, index, order, field: CyclotomicField::new(order) }
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Position in `enumerate_characters`.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// All values lie in Q(zeta_m) for this m.
    pub fn value_order(&self) -> u64 {
        self.order
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn group(&self) -> &Arc<UnitGroupStructure> {
        &self.group
    }

    pub fn is_principal(&self) -> bool {
        self.order == 1
    }

    /// Order at most 2, so every value is 0 or +-1.
    pub fn is_real(&self) -> bool {
        self.order <= 2
    }

    /// `Some(j)` with `chi(a) = zeta_m^j`, or `None` when `chi(a) = 0`.
    pub fn exponent_at(&self, a: i64) -> Option<u64> {
        let tuple = self.group.dlog(a)?;
        let m = self.order as u128;
        let j = tuple
            .iter()
            .zip(&self.exponents)
            .zip(&self.group.orders)
            .fold(0u128, |acc, ((&l, &e), &o)| (acc + (e as u128 * m / o as u128) * l as u128) % m);
        Some(j as u64)
    }

    /// Value as a small integer when it is rational (0 or +-1).
    pub fn int_value(&self, a: i64) -> Option<i64> {
        match self.exponent_at(a) {
            None => Some(0),
            Some(0) => Some(1),
            Some(j) if 2 * j == self.order => Some(-1),
            Some(_) => None,
        }
    }

    /// The character `chi^k`.
    pub fn pow(&self, k: u64) -> Self {
        let exps: Vec<u64> = self
            .exponents
            .iter()
            .zip(&self.group.orders)
            .map(|(&e, &o)| (e as u128 * k as u128 % o as u128) as u64)
            .collect();
        let index = index_of(&exps, &self.group.orders);
        Self::build(self.group.clone(), exps, index)
    }

    pub fn conj(&self) -> Self {
        let exps: Vec<u64> = self.exponents.iter().zip(&self.group.orders).map(|(&e, &o)| (o - e) % o).collect();
        let index = index_of(&exps, &self.group.orders);
        Self::build(self.group.clone(), exps, index)
    }
}

fn index_of(exps: &[u64], orders: &[u64]) -> usize {
    exps.iter().zip(orders).fold(0usize, |acc, (&e, &o)| acc * o as usize + e as usize)
}

/// All `phi(d)` characters mod `d`, ordered lexicographically by exponent
/// tuple; index 0 is principal.
pub fn enumerate_characters(d: u64) -> Result<Vec<DirichletCharacter>> {
    let group = Arc::new(unit_group(d)?);
    let mut out = Vec::with_capacity(group.phi() as usize);
    let mut exps = vec![0u64; group.orders.len()];
    loop {
        let index = out.len();
        out.push(DirichletCharacter::build(group.clone(), exps.clone(), index));
        if !next_tuple(&mut exps, &group.orders) {
            break;
        }
    }
    Ok(out)
}

/// Character `d.k` in the enumeration order.
pub fn character(d: u64, k: usize) -> Result<DirichletCharacter> {
    let group = Arc::new(unit_group(d)?);
    let phi = group.phi() as usize;
    if k >= phi {
        return Err(Error::InvalidArgument(format!(
            "character index {k} out of range: modulus {d} has {phi} characters"
        )));
    }
    let mut exps = vec![0u64; group.orders.len()];
    let mut rest = k;
    for i in (0..exps.len()).rev() {
        let o = group.orders[i] as usize;
        exps[i] = (rest % o) as u64;
        rest /= o;
    }
    Ok(DirichletCharacter::build(group, exps, k))
}

/// Principal character mod `d`.
pub fn principal(d: u64) -> Result<DirichletCharacter> {
    character(d, 0)
}

/// Parses the CLI form `d.k`.
pub fn parse_character(s: &str) -> Result<DirichletCharacter> {
    let bad = || Error::InvalidArgument(format!("character must look like d.k, got {s:?}"));
    let (d, k) = s.split_once('.').ok_or_else(bad)?;
    character(d.trim().parse().map_err(|_| bad())?, k.trim().parse().map_err(|_| bad())?)
}

/// `chi(a)` in Q(zeta_m), m the character's value order.
pub fn char_eval(chi: &DirichletCharacter, a: i64) -> CycElem {
    match chi.exponent_at(a) {
        None => CycElem::zero(&chi.field),
        Some(j) => CycElem::zeta_power(&chi.field, j),
    }
}

/// Smallest `f | d` such that `chi` factors through `(Z/fZ)^*`.
pub fn conductor(chi: &DirichletCharacter) -> u64 {
    let d = chi.modulus();
    (1..=d)
        .filter(|f| d.is_multiple_of(*f))
        .find(|&f| {
            (0..d as i64).filter(|&a| a as u64 % f == 1 % f).all(|a| matches!(chi.exponent_at(a), Some(0) | None))
        })
        .unwrap_or(d)
}

/// `phi(d)`.
pub fn phi(d: u64) -> u64 {
    totient(d)
}

/// `sum_a chi(a) conj(chi'(a))` over a full residue system.
pub fn inner_product(a: &DirichletCharacter, b: &DirichletCharacter) -> CycElem {
    let m = a.order().lcm(&b.order());
    let field = CyclotomicField::new(m);
    let bc = b.conj();
    (0..a.modulus() as i64).fold(CycElem::zero(&field), |acc, x| {
        acc.add(&char_eval(a, x).lift(&field).mul(&char_eval(&bc, x).lift(&field)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn unit_group_examples() {
        let g9 = unit_group(9).unwrap();
        assert_eq!(g9.generators(), &[2]);
        assert_eq!(g9.orders(), &[6]);
        let g15 = unit_group(15).unwrap();
        assert_eq!(g15.orders(), &[2, 4]);
        assert_eq!(g15.generators()[0] % 3, 2);
        assert_eq!(g15.generators()[0] % 5, 1);
        assert_eq!(g15.generators()[1] % 3, 1);
        assert_eq!(g15.generators()[1] % 5, 2);
        let g1 = unit_group(1).unwrap();
        assert!(g1.generators().is_empty());
        assert_eq!(g1.phi(), 1);
        assert_eq!(unit_group(10), Err(Error::EvenModulus(10)));
        assert_eq!(unit_group(0), Err(Error::ZeroModulus));
    }

    #[test]
    fn dlog_is_bijection() {
        for d in (1..60).step_by(2) {
            let g = unit_group(d).unwrap();
            let units = (0..d as i64).filter(|&a| g.dlog(a).is_some()).count() as u64;
            assert_eq!(units, phi(d));
            assert_eq!(g.phi(), phi(d));
            for (gen, &o) in g.generators().iter().zip(g.orders()) {
                assert_eq!(mult_order(*gen, d), o);
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let c3 = enumerate_characters(3).unwrap();
        assert_eq!(c3.len(), 2);
        assert!(c3[0].is_principal());
        assert_eq!(char_eval(&c3[1], 2).as_rational(), Some(int(-1)));
        let orders: Vec<u64> = enumerate_characters(5).unwrap().iter().map(|c| c.order()).collect();
        assert_eq!(orders, vec![1, 4, 2, 4]);
        let c1 = enumerate_characters(1).unwrap();
        assert_eq!(c1.len(), 1);
        for a in -3..4 {
            assert_eq!(char_eval(&c1[0], a).as_rational(), Some(int(1)));
        }
    }

    #[test]
    fn eval_examples() {
        let chi = character(3, 1).unwrap();
        assert!(char_eval(&chi, 0).is_zero());
        assert_eq!(char_eval(&principal(9).unwrap(), 4).as_rational(), Some(int(1)));
        for (k, c) in enumerate_characters(15).unwrap().iter().enumerate() {
            assert_eq!(&character(15, k).unwrap(), c);
            assert!(char_eval(c, 5).is_zero() && char_eval(c, 0).is_zero());
        }
    }

    #[test]
    fn conductor_examples() {
        let chars = enumerate_characters(9).unwrap();
        assert_eq!(conductor(&chars[0]), 1);
        let quad = chars.iter().find(|c| c.order() == 2).unwrap();
        assert_eq!(conductor(quad), 3);
        let sextic = chars.iter().find(|c| c.order() == 6).unwrap();
        assert_eq!(conductor(sextic), 9);
    }

    #[test]
    fn orthogonality() {
        for d in [3u64, 5, 9, 15] {
            let chars = enumerate_characters(d).unwrap();
            for a in &chars {
                for b in &chars {
                    let ip = inner_product(a, b);
                    let expect = if a == b { int(phi(d) as i64) } else { int(0) };
                    assert_eq!(ip.as_rational(), Some(expect), "d={d} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn multiplicativity() {
        for d in (1..=45u64).step_by(2) {
            for chi in enumerate_characters(d).unwrap() {
                let m = chi.value_order();
                for a in 0..d as i64 {
                    for b in 0..d as i64 {
                        let expect = match (chi.exponent_at(a), chi.exponent_at(b)) {
                            (Some(x), Some(y)) => Some((x + y) % m),
                            _ => None,
                        };
                        assert_eq!(chi.exponent_at(a * b), expect, "d={d} {chi} a={a} b={b}");
                    }
                }
            }
        }
        for d in [9u64, 15] {
            for chi in enumerate_characters(d).unwrap() {
                for a in 0..d as i64 {
                    let ca = char_eval(&chi, a);
                    let cm = ca.pow(chi.value_order());
                    assert!(cm.is_zero() || cm == CycElem::one(chi.field()));
                    for b in 0..d as i64 {
                        assert_eq!(char_eval(&chi, a * b), ca.mul(&char_eval(&chi, b)));
                    }
                }
            }
        }
    }

    #[test]
    fn parse_and_powers() {
        let chi = parse_character("5.1").unwrap();
        assert_eq!(chi.order(), 4);
        assert_eq!(chi.pow(2).order(), 2);
        assert_eq!(chi.conj().index(), 3);
        assert!(parse_character("5").is_err());
        assert!(parse_character("5.4").is_err());
    }
}
