//! Truncated fermionic q-integrals: normalized Riemann sums reduced mod p^k.

use std::fmt;

use num_traits::One;

use crate::dirichlet::DirichletCharacter;
use crate::error::{Error, Result};
use crate::exact::padic::valuation_of;
use crate::exact::rational::{self, pow, Rational};
use crate::exact::{CycElem, PadicResidue};

/// The measure parameter `Q` of the Riemann sum, as a function of `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Measure {
    Q,
    MinusQ,
    MinusQInv,
    /// `-q^-d`.
    MinusQPowNegD(u64),
}

impl Measure {
    pub fn parameter(&self, q: &Rational) -> Rational {
        match self {
            Measure::Q => q.clone(),
            Measure::MinusQ => -q,
            Measure::MinusQInv => -q.recip(),
            Measure::MinusQPowNegD(d) => -pow(q, -(*d as i64)),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "q" => Ok(Measure::Q),
            "-q" => Ok(Measure::MinusQ),
            "-1/q" | "-q^-1" => Ok(Measure::MinusQInv),
            _ => {
                if let Some(d) = s.strip_prefix("-q^-") {
                    if let Ok(d) = d.parse() {
                        return Ok(Measure::MinusQPowNegD(d));
                    }
                }
                Err(Error::InvalidArgument(format!("measure must be one of q, -q, -q^-1, -q^-D; got {s:?}")))
            }
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Q => write!(f, "q"),
            Measure::MinusQ => write!(f, "-q"),
            Measure::MinusQInv => write!(f, "-q^-1"),
            Measure::MinusQPowNegD(d) => write!(f, "-q^-{d}"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum IntegrandKind {
    /// `x^n`
    Monomial(u32),
    /// `chi(x) x^n`
    ChiMonomial(DirichletCharacter, u32),
    /// `(x0 + x)^n`
    ShiftedMonomial(Rational, u32),
}

/// `f(x + shift)` for one of the supported integrands.
#[derive(Clone, Debug)]
pub struct IntegrandSpec {
    pub kind: IntegrandKind,
    pub shift: u64,
}

impl IntegrandSpec {
    pub fn monomial(n: u32) -> Self {
        IntegrandSpec { kind: IntegrandKind::Monomial(n), shift: 0 }
    }

    pub fn chi_monomial(chi: &DirichletCharacter, n: u32) -> Self {
        IntegrandSpec { kind: IntegrandKind::ChiMonomial(chi.clone(), n), shift: 0 }
    }

    pub fn shifted_monomial(x0: Rational, n: u32) -> Self {
        IntegrandSpec { kind: IntegrandKind::ShiftedMonomial(x0, n), shift: 0 }
    }

    /// `f_s(x) = f(x + s)` on top of any existing shift.
    pub fn shifted(&self, s: u64) -> Self {
        IntegrandSpec { kind: self.kind.clone(), shift: self.shift + s }
    }

    /// Period the Riemann sum must respect: `d` for character integrands.
    pub fn period(&self) -> u64 {
        match &self.kind {
            IntegrandKind::ChiMonomial(chi, _) => chi.modulus(),
            _ => 1,
        }
    }

    /// Exact value at a non-negative integer, in Q(zeta_m) for character
    /// integrands and Q otherwise.
    pub fn exact_value(&self, x: u64) -> CycElem {
        let y = (x + self.shift) as i64;
        match &self.kind {
            IntegrandKind::Monomial(n) => rational_elem(pow(&rational::int(y), *n as i64)),
            IntegrandKind::ChiMonomial(chi, n) => {
                crate::dirichlet::char_eval(chi, y).scale(&pow(&rational::int(y), *n as i64))
            }
            IntegrandKind::ShiftedMonomial(x0, n) => rational_elem(pow(&(x0 + rational::int(y)), *n as i64)),
        }
    }
}

fn rational_elem(r: Rational) -> CycElem {
    CycElem::from_rational(&crate::exact::CyclotomicField::new(1), r)
}

impl fmt::Display for IntegrandSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = if self.shift == 0 { "x".to_string() } else { format!("(x+{})", self.shift) };
        match &self.kind {
            IntegrandKind::Monomial(n) => write!(f, "{x}^{n}"),
            IntegrandKind::ChiMonomial(chi, n) => write!(f, "chi_{chi}{x}*{x}^{n}"),
            IntegrandKind::ShiftedMonomial(x0, n) => write!(f, "({}+{x})^{n}", rational::format(x0)),
        }
    }
}

/// Maps Q(zeta_m) into Z/p^k by sending zeta_m to a Teichmuller root of unity.
#[derive(Clone, Debug)]
pub struct CycEmbedding {
    base: PadicResidue,
    order: u64,
    root: PadicResidue,
}

impl CycEmbedding {
    pub fn new(base: PadicResidue, order: u64) -> Result<Self> {
        let root = if order <= 2 {
            if order == 2 {
                base.one().neg()
            } else {
                base.one()
            }
        } else {
            base.root_of_unity(order)?
        };
        Ok(CycEmbedding { base, order, root })
    }

    pub fn embed(&self, e: &CycElem) -> Result<PadicResidue> {
        let target = crate::exact::CyclotomicField::new(self.order);
        let e = if e.order() == self.order {
            e.clone()
        } else if self.order.is_multiple_of(e.order()) {
            e.lift(&target)
        } else {
            return Err(Error::InvalidArgument(format!(
                "element of Q(zeta_{}) outside Q(zeta_{})",
                e.order(),
                self.order
            )));
        };
        let mut acc = self.base.zero();
        let mut w = self.base.one();
        for c in e.coeffs() {
            acc = acc.add(&self.base.embed(c)?.mul(&w));
            w = w.mul(&self.root);
        }
        Ok(acc)
    }

    /// Image of `zeta_m^j`.
    pub fn zeta_power(&self, j: u64) -> PadicResidue {
        self.root.pow(j)
    }
}

/// Validates `p`, `k` and `q = 1 (mod p)`, returning the zero residue.
pub fn padic_context(p: u64, q: &Rational, k: u32) -> Result<PadicResidue> {
    let base = PadicResidue::new(p, k, 0)?;
    let bad = || Error::BadCongruence { q: rational::format(q), p };
    if !rational::is_p_integral(q, p) {
        return Err(bad());
    }
    let diff = q - Rational::one();
    match valuation_of(diff.numer(), p) {
        None => {}
        Some(v) if v >= 1 => {}
        _ => return Err(bad()),
    }
    Ok(base)
}

/// Evaluates an integrand at integers as residues mod p^k.
pub(crate) struct Evaluator {
    base: PadicResidue,
    spec: IntegrandSpec,
    x0: Option<PadicResidue>,
    // chi(a) for a mod d, already embedded.
    chi_table: Vec<PadicResidue>,
}

impl Evaluator {
    pub(crate) fn new(spec: &IntegrandSpec, base: &PadicResidue) -> Result<Self> {
        let mut x0 = None;
        let mut chi_table = Vec::new();
        match &spec.kind {
            IntegrandKind::Monomial(_) => {}
            IntegrandKind::ShiftedMonomial(r, _) => x0 = Some(base.embed(r)?),
            IntegrandKind::ChiMonomial(chi, _) => {
                let emb = CycEmbedding::new(*base, chi.value_order())?;
                chi_table = (0..chi.modulus() as i64)
                    .map(|a| match chi.exponent_at(a) {
                        None => base.zero(),
                        Some(j) => emb.zeta_power(j),
                    })
                    .collect();
            }
        }
        Ok(Evaluator { base: *base, spec: spec.clone(), x0, chi_table })
    }

    pub(crate) fn eval(&self, x: u64) -> PadicResidue {
        let y = x + self.spec.shift;
        let yr = self.base.embed_int(y as i128);
        match &self.spec.kind {
            IntegrandKind::Monomial(n) => yr.pow(*n as u64),
            IntegrandKind::ShiftedMonomial(_, n) => self.x0.expect("embedded at construction").add(&yr).pow(*n as u64),
            IntegrandKind::ChiMonomial(chi, n) => {
                let c = self.chi_table[(y % chi.modulus()) as usize];
                if c.is_zero() {
                    c
                } else {
                    c.mul(&yr.pow(*n as u64))
                }
            }
        }
    }
}

/// Number of summation points at level `N`: `p^N`, times `d` for a character
/// integrand of modulus `d > 1`.
pub fn summation_length(f: &IntegrandSpec, p: u64, level: u32) -> Result<u64> {
    let pn =
        p.checked_pow(level).ok_or_else(|| Error::InvalidArgument(format!("level {level} too large for p = {p}")))?;
    pn.checked_mul(f.period()).ok_or_else(|| Error::InvalidArgument("summation range overflows".into()))
}

/// `(1/[L]_Q) sum_{eta < L} Q^eta f(eta)` mod `p^k`, with `Q` the measure
/// parameter and `L = p^N` (times `d` for character integrands).
pub fn truncated_integral(
    f: &IntegrandSpec,
    p: u64,
    q: &Rational,
    measure: Measure,
    level: u32,
    k: u32,
) -> Result<PadicResidue> {
    if level == 0 {
        return Err(Error::InvalidArgument("level N must be >= 1".into()));
    }
    let base = padic_context(p, q, k)?;
    let eval = Evaluator::new(f, &base)?;
    let big_q = base.embed(&measure.parameter(q))?;
    let len = summation_length(f, p, level)?;
    let mut sum = base.zero();
    let mut norm = base.zero();
    let mut w = base.one();
    for eta in 0..len {
        norm = norm.add(&w);
        let v = eval.eval(eta);
        if !v.is_zero() {
            sum = sum.add(&w.mul(&v));
        }
        w = w.mul(&big_q);
    }
    if !norm.is_unit() {
        return Err(Error::NonUnitNormalizer);
    }
    Ok(sum.mul(&norm.inverse()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::principal;
    use crate::exact::rational::int;

    #[test]
    fn constant_integrand_is_exactly_one() {
        for (p, q) in [(3u64, 4i64), (5, 6), (7, 15)] {
            for level in 1..4 {
                let v =
                    truncated_integral(&IntegrandSpec::monomial(0), p, &int(q), Measure::MinusQInv, level, 3).unwrap();
                assert_eq!(v.residue(), 1);
            }
        }
    }

    #[test]
    fn linear_integrand_spot_value() {
        let v = truncated_integral(&IntegrandSpec::monomial(1), 5, &int(6), Measure::MinusQInv, 6, 3).unwrap();
        assert_eq!(v.residue(), 107);
        assert_eq!(v.modulus(), 125);
    }

    #[test]
    fn rejects_bad_inputs() {
        let f = IntegrandSpec::monomial(1);
        assert!(matches!(
            truncated_integral(&f, 5, &int(2), Measure::MinusQInv, 3, 2),
            Err(Error::BadCongruence { .. })
        ));
        assert_eq!(truncated_integral(&f, 5, &int(6), Measure::Q, 3, 2), Err(Error::NonUnitNormalizer));
        assert!(truncated_integral(&f, 5, &int(6), Measure::MinusQInv, 0, 2).is_err());
    }

    #[test]
    fn principal_character_integral() {
        // q^-2 A_{0,chi}(-q) for the principal character mod 5, q = 6
        let chi = principal(5).unwrap();
        let q = int(6);
        let a = crate::chi_eulerian::chi_eulerian(0, &chi, &q).unwrap().as_rational().unwrap();
        let expect = PadicResidue::from_rational(&(a * pow(&q, -2)), 5, 3).unwrap();
        let v = truncated_integral(&IntegrandSpec::chi_monomial(&chi, 0), 5, &q, Measure::MinusQInv, 6, 3).unwrap();
        assert_eq!(v, expect);
    }

    #[test]
    fn measure_parsing() {
        for m in [Measure::Q, Measure::MinusQ, Measure::MinusQInv, Measure::MinusQPowNegD(3)] {
            assert_eq!(Measure::parse(&m.to_string()).unwrap(), m);
        }
        assert!(Measure::parse("2q").is_err());
    }
}
