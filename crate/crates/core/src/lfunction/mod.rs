//! The Eulerian L-function
//! `L_E(s|chi) = q (1+q)^{1-s} sum_{m>=1} (-1)^m chi(m) q^-m m^-s`
//! for `q > 1`, its values at non-positive integers, and the term-wise Mellin
//! identity behind it.

pub mod gamma;
pub mod quadrature;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::chi_eulerian::{chi_eulerian, geometric_tail, geometric_tail_at};
use crate::dirichlet::DirichletCharacter;
use crate::error::{Error, Result};
use crate::exact::cyclotomic::CycElem;
use crate::exact::rational::{self, Rational};
use crate::numeric::{check_bits, log2_abs, Bound, ExactComplex, Mp, MpComplex};

pub use gamma::{bernoulli_numbers, gamma, GammaValue};
pub use quadrature::{tanh_sinh, Quadrature};

/// A value of `L_E(s|chi)` with its truncation and rounding bounds.
#[derive(Clone, Debug)]
pub struct LValue {
    pub s: ExactComplex,
    pub character: String,
    pub q: Rational,
    pub bits: u32,
    pub value: MpComplex,
    /// Bound on the omitted tail `m > terms`, prefactor included.
    pub tail_bound: Bound,
    pub rounding: Bound,
    pub terms: u64,
}

impl LValue {
    pub fn total_bound(&self) -> Bound {
        self.tail_bound.plus(self.rounding)
    }
}

fn check_q(q: &Rational) -> Result<()> {
    if q <= &Rational::one() {
        return Err(Error::ConvergenceDomain { q: rational::format(q) });
    }
    Ok(())
}

/// `log2 |q (1+q)^{1-s}|`.
fn log2_prefactor(s: &ExactComplex, q: &Rational) -> f64 {
    let one_q = Rational::one() + q;
    rational::log2_abs(q) + (1.0 - rational::to_f64(&s.re)) * rational::log2_abs(&one_q)
}

/// Evaluates `L_E(s|chi)` with `M` chosen so the tail is below `2^{-bits+4}`.
pub fn l_eulerian(s: &ExactComplex, chi: &DirichletCharacter, q: &Rational, bits: u32) -> Result<LValue> {
    check_bits(bits, 64)?;
    check_q(q)?;
    let target = -(bits as f64) + 4.0 - log2_prefactor(s, q);
    let (terms, _) = geometric_tail(-rational::to_f64(&s.re), rational::log2_abs(q), target);
    l_eulerian_with_terms(s, chi, q, bits, terms)
}

/// Evaluates the partial sum to exactly `terms` terms.
pub fn l_eulerian_with_terms(
    s: &ExactComplex,
    chi: &DirichletCharacter,
    q: &Rational,
    bits: u32,
    terms: u64,
) -> Result<LValue> {
    check_bits(bits, 64)?;
    check_q(q)?;
    let sigma = rational::to_f64(&s.re);
    let log2_q = rational::log2_abs(q);
    let pre = log2_prefactor(s, q);
    let tail_log2 = geometric_tail_at(terms, -sigma, log2_q)
        .ok_or_else(|| Error::NotConverged(format!("{terms} terms do not reach geometric decay")))?;

    let peak =
        (1..=terms.max(1)).map(|m| -sigma * (m as f64).log2() - m as f64 * log2_q).fold(f64::NEG_INFINITY, f64::max);
    let guard = 64 + (terms as f64 + 1.0).log2().ceil() as usize;
    let prec = bits as usize + guard + peak.max(0.0).ceil() as usize + pre.abs().ceil() as usize;
    let mut mp = Mp::new(prec);

    let sum = partial_sum(&mut mp, s, chi, q, terms);
    let one_minus_s = MpComplex::new(mp.sub(&mp.int(1), &mp.rational(&s.re)), mp.rational(&-s.im.clone()));
    let one_q = mp.rational(&(Rational::one() + q));
    let factor = mp.real_pow_complex(&one_q, &one_minus_s);
    let factor = mp.cscale(&factor, &mp.rational(q));
    let value = mp.cmul(&factor, &sum);

    let rounding = Bound::pow2(-(prec as f64) + peak.max(0.0) + pre + (terms as f64 + 2.0).log2() + 8.0);
    Ok(LValue {
        s: s.clone(),
        character: chi.to_string(),
        q: q.clone(),
        bits,
        value,
        tail_bound: Bound::from_log2(tail_log2 + pre),
        rounding,
        terms,
    })
}

/// `m^-s`; integer `s` avoids logarithms.
fn power_term(mp: &mut Mp, m: u64, s: &ExactComplex) -> MpComplex {
    if let Some(k) = s.as_integer() {
        let mk = BigInt::from(m).pow(k.unsigned_abs() as u32);
        let v = if k <= 0 { mp.big(&mk) } else { mp.div(&mp.int(1), &mp.big(&mk)) };
        return MpComplex::real(v, mp);
    }
    let base = mp.int(m as i64);
    let neg_s = MpComplex::new(mp.rational(&-s.re.clone()), mp.rational(&-s.im.clone()));
    mp.real_pow_complex(&base, &neg_s)
}

/// `sum_{m=1}^{M} (-1)^m chi(m) q^-m m^-s`, grouped by the exponent of `chi(m)`.
fn partial_sum(mp: &mut Mp, s: &ExactComplex, chi: &DirichletCharacter, q: &Rational, terms: u64) -> MpComplex {
    let order = chi.value_order();
    let mut sums = vec![MpComplex::zero(mp); order as usize];
    let q_inv = mp.rational(&q.recip());
    let mut q_pow = q_inv.clone();
    for m in 1..=terms {
        if let Some(j) = chi.exponent_at(m as i64) {
            let t = power_term(mp, m, s);
            let t = mp.cscale(&t, &q_pow);
            let slot = &sums[j as usize];
            sums[j as usize] = if m % 2 == 0 { mp.cadd(slot, &t) } else { mp.csub(slot, &t) };
        }
        q_pow = mp.mul(&q_pow, &q_inv);
    }
    let mut acc = MpComplex::zero(mp);
    for (j, part) in sums.iter().enumerate() {
        if part.re.is_zero() && part.im.is_zero() {
            continue;
        }
        let z = mp.root_of_unity(j as u64, order);
        acc = mp.cadd(&acc, &mp.cmul(&z, part));
    }
    acc
}

/// `L_E(-n|chi)` against `(-1)^n A_{n,chi}(-q)`.
#[derive(Clone, Debug)]
pub struct InterpolationReport {
    pub n: usize,
    pub l_value: LValue,
    pub a_value: CycElem,
    pub expected: MpComplex,
    pub error_log2: f64,
    pub bound: Bound,
    pub pass: bool,
}

pub fn verify_interpolation(
    n: usize,
    chi: &DirichletCharacter,
    q: &Rational,
    bits: u32,
) -> Result<InterpolationReport> {
    let s = ExactComplex::real(Rational::from_integer(-BigInt::from(n)));
    let l_value = l_eulerian(&s, chi, q, bits)?;
    let a_value = chi_eulerian(n, chi, q)?;
    let signed = if n.is_multiple_of(2) { a_value.clone() } else { a_value.neg() };
    let mut mp = Mp::new(bits as usize + 64);
    let expected = signed.embed_in(&mut mp);
    let diff = mp.csub(&l_value.value, &expected);
    let error_log2 = log2_abs(&mp.cabs(&diff));
    let bound = l_value.total_bound().plus(Bound::pow2(-(bits as f64) + 8.0));
    let pass = bound.admits(error_log2);
    Ok(InterpolationReport { n, l_value, a_value, expected, error_log2, bound, pass })
}

/// Term-wise Mellin identity
/// `(1/Gamma(s)) int_0^inf t^{s-1} e^{-m(1+q)t} dt = (m(1+q))^-s`.
#[derive(Clone, Debug)]
pub struct MellinReport {
    pub s: ExactComplex,
    pub m: u64,
    pub q: Rational,
    pub bits: u32,
    pub lhs: MpComplex,
    pub rhs: MpComplex,
    /// `(m(1+q))^-s` when it is rational.
    pub rhs_exact: Option<Rational>,
    pub cutoff: f64,
    pub quadrature_levels: u32,
    pub quadrature_nodes: usize,
    pub quadrature_estimate: Bound,
    pub gamma_error: Bound,
    pub error_log2: f64,
    pub tolerance: Bound,
    pub pass: bool,
}

/// Smallest `T` (on a grid of eighths) with
/// `2 T^{sigma-1} e^{-aT} / a < 2^target` and `e^{-aT} < 2^target`.
fn mellin_cutoff(sigma: f64, a: f64, target: f64) -> f64 {
    let log2_e = std::f64::consts::LOG2_E;
    let mut t: f64 = (((sigma - 1.0).max(0.0) / a).max(0.125) * 16.0).ceil() / 8.0;
    loop {
        let decay = -a * t * log2_e;
        let tail = 1.0 + (sigma - 1.0) * t.log2() + decay - a.log2();
        if decay < target && tail < target {
            return t;
        }
        t += 0.125;
    }
}

pub fn mellin_term_check(s: &ExactComplex, m: u64, q: &Rational, bits: u32) -> Result<MellinReport> {
    check_bits(bits, 32)?;
    if !s.re.is_positive() {
        return Err(Error::DomainError("the Mellin integral needs Re s > 0".into()));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let one_q = Rational::one() + q;
    if !one_q.is_positive() {
        return Err(Error::DomainError("the exponent m(1+q) must be positive".into()));
    }
    let a = Rational::from_integer(BigInt::from(m)) * &one_q;
    let sigma = rational::to_f64(&s.re);
    let a_f = rational::to_f64(&a);
    let wp = bits as usize + 64;
    let mut mp = Mp::new(wp);

    let target = -(bits as f64) - 16.0;
    let cutoff = mellin_cutoff(sigma, a_f, target);
    let u_max = wp as f64 * std::f64::consts::LN_2 / (2.0 * sigma.min(1.0)) + 10.0;
    let x_max = (2.0 * u_max / std::f64::consts::PI).asinh();
    let t_max = mp.rational(&rational::rat((cutoff * 8.0).round() as i64, 8));

    let s_mp = mp.complex_from(s);
    let s_minus_1 = MpComplex::new(mp.sub(&s_mp.re, &mp.int(1)), s_mp.im.clone());
    let a_mp = mp.rational(&a);
    let quad = tanh_sinh(&mut mp, &t_max, x_max, -(bits as f64) * 0.75, 14, |mp, t| {
        if t.is_zero() {
            return MpComplex::zero(mp);
        }
        let p = mp.real_pow_complex(t, &s_minus_1);
        let e = mp.exp(&mp.mul(&mp.sub(&mp.zero(), &a_mp), t));
        mp.cscale(&p, &e)
    })?;
    let g = gamma(&mut mp, &s_mp)?;
    let lhs = mp.cdiv(&quad.value, &g.value);
    let neg_s = MpComplex::new(mp.sub(&mp.zero(), &s_mp.re), mp.sub(&mp.zero(), &s_mp.im));
    let rhs = mp.real_pow_complex(&a_mp, &neg_s);
    let rhs_exact = s.as_integer().map(|k| rational::pow(&a, -k));
    let error_log2 = log2_abs(&mp.cabs(&mp.csub(&lhs, &rhs)));
    let tolerance = Bound::pow2(-(bits as f64) / 2.0);
    let mut pass = tolerance.admits(error_log2);
    if let Some(exact) = &rhs_exact {
        let e = mp.rational(exact);
        let d = log2_abs(&mp.cabs(&mp.csub(&lhs, &MpComplex::real(e, &mp))));
        pass &= tolerance.admits(d);
    }
    Ok(MellinReport {
        s: s.clone(),
        m,
        q: q.clone(),
        bits,
        lhs,
        rhs,
        rhs_exact,
        cutoff,
        quadrature_levels: quad.levels,
        quadrature_nodes: quad.nodes,
        quadrature_estimate: quad.estimate,
        gamma_error: g.relative_error,
        error_log2,
        tolerance,
        pass,
    })
}
