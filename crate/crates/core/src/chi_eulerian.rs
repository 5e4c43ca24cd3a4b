//! Dirichlet-type Eulerian values `A_{n,chi}(-q)`, the weight-zero q-Euler and
//! q-Genocchi polynomials, and the distribution identity tying them together.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::dirichlet::{char_eval, enumerate_characters, DirichletCharacter};
use crate::error::{Error, Result};
use crate::exact::rational::{self, binomial_row, int, pow, Rational};
use crate::exact::{q_number, CycElem, CyclotomicField};
use crate::numeric::{log2_abs, Bound, Mp, MpComplex};

/// Which form of an integral-facing identity to assert: as printed, or with
/// the A-side multiplied by `q^-2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Printed,
    Corrected,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Printed => "printed",
            Variant::Corrected => "corrected",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(Variant::Printed),
            "corrected" => Ok(Variant::Corrected),
            _ => Err(Error::InvalidArgument(format!("variant must be printed or corrected, got {s:?}"))),
        }
    }
}

impl Variant {
    /// Factor applied to the A-side: 1 or `q^-2`.
    pub fn a_side_factor(&self, q: &Rational) -> Rational {
        match self {
            Variant::Printed => Rational::one(),
            Variant::Corrected => pow(q, -2),
        }
    }
}

/// Rejects `q` in `{0, -1}` and `q^d = -1`.
pub fn check_q(q: &Rational, d: u64) -> Result<()> {
    if q.is_zero() {
        return Err(Error::PoleQ { q: rational::format(q), reason: "q^(d-l+1) kernel factor vanishes at q = 0" });
    }
    if (pow(q, d as i64) + Rational::one()).is_zero() {
        return Err(Error::PoleQ { q: rational::format(q), reason: "denominator 1 + q^d vanishes" });
    }
    Ok(())
}

/// `A_{0,chi}..=A_{max_n,chi}` for an arbitrary kernel `l -> chi(l)`, `l < d`.
///
/// Clearing the denominator of the generating function gives
/// `(1 + q^d) A_n = R_n - sum_{k<n} C(n,k) A_k (-d(1+q))^{n-k}` with
/// `R_n = (1+q) sum_l (-1)^l q^{d-l+1} chi(l) (-l(1+q))^n`.
pub fn chi_eulerian_with_kernel(max_n: usize, q: &Rational, kernel: &[CycElem]) -> Result<Vec<CycElem>> {
    let d = kernel.len() as u64;
    if d == 0 {
        return Err(Error::ZeroModulus);
    }
    check_q(q, d)?;
    let field = kernel[0].field().clone();
    let one_q = Rational::one() + q;
    let weights: Vec<(Rational, Rational)> = (0..d as i64)
        .map(|l| {
            let sign = if l % 2 == 0 { int(1) } else { int(-1) };
            (&one_q * sign * pow(q, d as i64 - l + 1), -(int(l) * &one_q))
        })
        .collect();
    let step = -(int(d as i64) * &one_q);
    let step_pows: Vec<Rational> = (0..=max_n as i64).map(|e| pow(&step, e)).collect();
    let denom_inv = (Rational::one() + pow(q, d as i64)).recip();
    let mut out: Vec<CycElem> = Vec::with_capacity(max_n + 1);
    let mut base_pows: Vec<Rational> = vec![Rational::one(); d as usize];
    for n in 0..=max_n {
        let mut r = CycElem::zero(&field);
        for (l, (w, b)) in weights.iter().enumerate() {
            let c = w * &base_pows[l];
            if !c.is_zero() && !kernel[l].is_zero() {
                r = r.add(&kernel[l].scale(&c));
            }
            base_pows[l] *= b;
        }
        let row = binomial_row(n);
        for (k, ak) in out.iter().enumerate() {
            r = r.sub(&ak.scale(&(&row[k] * &step_pows[n - k])));
        }
        out.push(r.scale(&denom_inv));
    }
    Ok(out)
}

fn kernel_of(chi: &DirichletCharacter) -> Vec<CycElem> {
    (0..chi.modulus() as i64).map(|l| char_eval(chi, l)).collect()
}

/// `A_{0,chi}(-q)..=A_{max_n,chi}(-q)`.
pub fn chi_eulerian_table(max_n: usize, chi: &DirichletCharacter, q: &Rational) -> Result<Vec<CycElem>> {
    chi_eulerian_with_kernel(max_n, q, &kernel_of(chi))
}

/// `A_{n,chi}(-q)` in Q(zeta_m).
pub fn chi_eulerian(n: usize, chi: &DirichletCharacter, q: &Rational) -> Result<CycElem> {
    Ok(chi_eulerian_table(n, chi, q)?.swap_remove(n))
}

/// `(-1)^n A / (q (1+q)^{n+1})`, the closed form of the alternating series.
pub fn series_closed_form(n: usize, a: &CycElem, q: &Rational) -> CycElem {
    let sign = if n.is_multiple_of(2) { int(1) } else { int(-1) };
    a.scale(&(sign / (q * pow(&(Rational::one() + q), n as i64 + 1))))
}

/// Outcome of comparing the closed form against the numeric series.
#[derive(Clone, Debug)]
pub struct SeriesCheck {
    pub exact_lhs: CycElem,
    pub lhs: MpComplex,
    pub rhs: MpComplex,
    pub terms: u64,
    pub tail: Bound,
    pub slack: Bound,
    pub error_log2: f64,
    /// Whether the `m = 0` term (`chi(0) 0^n`) is nonzero.
    pub m0_term: bool,
    pub pass: bool,
}

/// `log2` of a bound on `sum_{m>M} m^e x^-m` from the geometric majorant with
/// ratio `((M+2)/(M+1))^e / x`, or `None` when that ratio is not below 1.
pub fn geometric_tail_at(big_m: u64, e: f64, log2_x: f64) -> Option<f64> {
    let mf = big_m as f64;
    let log2_r = e.max(0.0) * ((mf + 2.0) / (mf + 1.0)).log2() - log2_x;
    if log2_r >= -0.01 {
        return None;
    }
    let first = e * (mf + 1.0).log2() - (mf + 1.0) * log2_x;
    Some(first - (1.0 - 2f64.powf(log2_r)).log2())
}

/// Smallest `M` (on a coarse grid past 64) whose geometric tail bound is
/// below `2^target_log2`; returns `(M, log2 bound)`.
pub fn geometric_tail(e: f64, log2_x: f64, target_log2: f64) -> (u64, f64) {
    let mut m: u64 = 1;
    loop {
        if let Some(bound) = geometric_tail_at(m, e, log2_x) {
            if bound < target_log2 {
                return (m, bound);
            }
        }
        m += if m < 64 { 1 } else { m / 16 };
    }
}

/// Checks `(-1)^n A_{n,chi}(-q) / (q(1+q)^{n+1}) = sum_{m>=0} (-1)^m chi(m) m^n q^-m`.
pub fn chi_eulerian_series_check(n: usize, chi: &DirichletCharacter, q: &Rational, bits: u32) -> Result<SeriesCheck> {
    crate::numeric::check_bits(bits, 64)?;
    if q <= &Rational::one() {
        return Err(Error::ConvergenceDomain { q: rational::format(q) });
    }
    let a = chi_eulerian(n, chi, q)?;
    let exact_lhs = series_closed_form(n, &a, q);
    let log2_q = rational::log2_abs(q);
    let (terms, tail_log2) = geometric_tail(n as f64, log2_q, -(bits as f64) + 4.0);
    let peak = (1..=terms).map(|m| n as f64 * (m as f64).log2() - m as f64 * log2_q).fold(0.0f64, f64::max);
    let lhs_size = exact_lhs.coeffs().iter().map(rational::log2_abs).fold(0.0f64, f64::max);
    let prec = bits as usize + 64 + peak.max(lhs_size).ceil() as usize + (terms as f64).log2().ceil() as usize;
    let mut mp = Mp::new(prec);
    let rhs = alternating_series(&mut mp, n, chi, q, terms);
    let lhs = exact_lhs.embed_in(&mut mp);
    let diff = mp.csub(&lhs, &rhs);
    let error_log2 = mp.cabs(&diff);
    let error_log2 = log2_abs(&error_log2);
    let tail = Bound::from_log2(tail_log2);
    let slack = Bound::pow2(-(bits as f64) + 8.0);
    let pass = tail.plus(slack).admits(error_log2);
    Ok(SeriesCheck {
        exact_lhs,
        lhs,
        rhs,
        terms,
        tail,
        slack,
        error_log2,
        m0_term: chi.exponent_at(0).is_some() && n == 0,
        pass,
    })
}

/// `sum_{m=0}^{M} (-1)^m chi(m) m^n q^-m` at the context's precision, grouped
/// by the exponent of `chi(m)`.
pub(crate) fn alternating_series(
    mp: &mut Mp,
    n: usize,
    chi: &DirichletCharacter,
    q: &Rational,
    terms: u64,
) -> MpComplex {
    let order = chi.value_order();
    let mut sums = vec![mp.zero(); order as usize];
    let q_inv = mp.rational(&q.recip());
    let mut q_pow = mp.int(1);
    for m in 0..=terms {
        if let Some(j) = chi.exponent_at(m as i64) {
            let mn = if n == 0 { mp.int(1) } else { mp.big(&BigInt::from(m).pow(n as u32)) };
            let term = mp.mul(&mn, &q_pow);
            sums[j as usize] =
                if m % 2 == 0 { mp.add(&sums[j as usize], &term) } else { mp.sub(&sums[j as usize], &term) };
        }
        q_pow = mp.mul(&q_pow, &q_inv);
    }
    let mut acc = MpComplex::zero(mp);
    for (j, s) in sums.iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        let z = mp.root_of_unity(j as u64, order);
        acc = mp.cadd(&acc, &mp.cscale(&z, s));
    }
    acc
}

/// `E~_{0,q}(x)..=E~_{max_n,q}(x)` from
/// `E~_n(x) = ((1+q) x^n - q sum_{k<n} C(n,k) E~_k(x)) / (1+q)`.
pub fn weight_zero_euler_table(max_n: usize, q: &Rational, x: &Rational) -> Result<Vec<Rational>> {
    let one_q = Rational::one() + q;
    if one_q.is_zero() {
        return Err(Error::PoleAtMinusOne);
    }
    let inv = one_q.recip();
    let mut out: Vec<Rational> = Vec::with_capacity(max_n + 1);
    let mut xn = Rational::one();
    for n in 0..=max_n {
        let row = binomial_row(n);
        let s = out.iter().enumerate().fold(Rational::zero(), |acc, (k, e)| acc + &row[k] * e);
        out.push((&one_q * &xn - q * s) * &inv);
        xn *= x;
    }
    Ok(out)
}

pub fn weight_zero_euler(n: usize, q: &Rational, x: &Rational) -> Result<Rational> {
    Ok(weight_zero_euler_table(n, q, x)?.swap_remove(n))
}

/// `G~_{n+1,q}(x) = (n+1) E~_{n,q}(x)`.
pub fn weight_zero_genocchi(n_plus_1: usize, q: &Rational, x: &Rational) -> Result<Rational> {
    if n_plus_1 == 0 {
        return Err(Error::InvalidArgument("Genocchi index must be >= 1".into()));
    }
    Ok(int(n_plus_1 as i64) * weight_zero_euler(n_plus_1 - 1, q, x)?)
}

/// Number of `q` samples that proves a rational-function identity of the
/// distribution relation at this `(n, d)`.
pub fn distribution_sample_bound(n: usize, d: u64) -> usize {
    4 * (n + 1) * (d as usize + 1)
}

/// Rejects samples at which the distribution relation is undefined.
pub fn check_sample(q: &Rational, d: u64) -> Result<()> {
    let reason = if q.is_zero() {
        Some("q = 0")
    } else if (q + Rational::one()).is_zero() {
        Some("q = -1")
    } else if (pow(q, d as i64) + Rational::one()).is_zero() {
        Some("q^d = -1")
    } else {
        None
    };
    match reason {
        Some(reason) => Err(Error::DegenerateSample { q: rational::format(q), reason }),
        None => Ok(()),
    }
}

/// `count` admissible samples: the given values first (in order, skipping
/// degenerate ones and repeats), then `a/b` with `a > b >= 1`, `gcd(a,b) = 1`,
/// ordered by `a` then `b`.
pub fn admissible_samples(count: usize, d: u64, first: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(count);
    let push = |q: Rational, out: &mut Vec<Rational>| {
        if out.len() < count && check_sample(&q, d).is_ok() && !out.contains(&q) {
            out.push(q);
        }
    };
    for q in first {
        push(q.clone(), &mut out);
    }
    let mut a: i64 = 2;
    while out.len() < count {
        for b in 1..a {
            if a.gcd(&b) == 1 {
                push(rational::rat(a, b), &mut out);
            }
        }
        a += 1;
    }
    out
}

/// One sample of the distribution relation.
#[derive(Clone, Debug)]
pub struct DistributionSample {
    pub q: Rational,
    pub lhs_printed: CycElem,
    pub lhs_corrected: CycElem,
    pub rhs: CycElem,
    pub genocchi_rhs: CycElem,
    /// `lhs_printed / rhs` when `rhs != 0`.
    pub ratio: Option<CycElem>,
    pub holds: bool,
    pub printed_is_q2_rhs: bool,
    pub genocchi_agrees: bool,
}

#[derive(Clone, Debug)]
pub struct DistributionReport {
    pub n: usize,
    pub variant: Variant,
    pub required_samples: usize,
    pub samples: Vec<DistributionSample>,
    pub pass: bool,
}

/// The sum side `(d^n / [d]_{-1/q}) sum_a (-1)^a chi(a) q^-a E~_{n,q^-d}(a/d)`
/// and its Genocchi form.
pub fn distribution_rhs(n: usize, chi: &DirichletCharacter, q: &Rational) -> Result<(CycElem, CycElem)> {
    let d = chi.modulus();
    let field = chi.field();
    let qd = pow(q, -(d as i64));
    let norm = pow(&int(d as i64), n as i64) / q_number(d as i64, &-q.recip())?;
    let mut euler = CycElem::zero(field);
    let mut genocchi = CycElem::zero(field);
    for a in 0..d as i64 {
        let c = char_eval(chi, a);
        if c.is_zero() {
            continue;
        }
        let sign = if a % 2 == 0 { int(1) } else { int(-1) };
        let x = rational::rat(a, d as i64);
        let w = sign * pow(q, -a);
        euler = euler.add(&c.scale(&(&w * weight_zero_euler(n, &qd, &x)?)));
        genocchi = genocchi.add(&c.scale(&(&w * weight_zero_genocchi(n + 1, &qd, &x)?)));
    }
    let genocchi_norm = &norm / int(n as i64 + 1);
    Ok((euler.scale(&norm), genocchi.scale(&genocchi_norm)))
}

/// The A side `(-1)^n (1+q)^-n A_{n,chi}(-q)` as printed.
pub fn distribution_lhs_printed(n: usize, chi: &DirichletCharacter, q: &Rational) -> Result<CycElem> {
    let a = chi_eulerian(n, chi, q)?;
    let sign = if n.is_multiple_of(2) { int(1) } else { int(-1) };
    Ok(a.scale(&(sign * pow(&(Rational::one() + q), -(n as i64)))))
}

/// Evaluates both sides at every sample; the identity is proven when all
/// samples agree and there are at least `distribution_sample_bound` of them.
pub fn verify_distribution(
    n: usize,
    chi: &DirichletCharacter,
    q_samples: &[Rational],
    variant: Variant,
) -> Result<DistributionReport> {
    let d = chi.modulus();
    let required = distribution_sample_bound(n, d);
    let mut samples = Vec::with_capacity(q_samples.len());
    for q in q_samples {
        check_sample(q, d)?;
        let lhs_printed = distribution_lhs_printed(n, chi, q)?;
        let lhs_corrected = lhs_printed.scale(&pow(q, -2));
        let (rhs, genocchi_rhs) = distribution_rhs(n, chi, q)?;
        let ratio = if rhs.is_zero() { None } else { Some(lhs_printed.div(&rhs)?) };
        let lhs = match variant {
            Variant::Printed => &lhs_printed,
            Variant::Corrected => &lhs_corrected,
        };
        samples.push(DistributionSample {
            holds: *lhs == rhs,
            printed_is_q2_rhs: lhs_printed == rhs.scale(&(q * q)),
            genocchi_agrees: genocchi_rhs == rhs,
            q: q.clone(),
            lhs_printed,
            lhs_corrected,
            rhs,
            genocchi_rhs,
            ratio,
        });
    }
    let pass = samples.len() >= required && samples.iter().all(|s| s.holds && s.genocchi_agrees);
    Ok(DistributionReport { n, variant, required_samples: required, samples, pass })
}

/// Sums `A_{n,chi}` over every character mod `d` and compares with the value
/// for the summed kernel `phi(d) [l = 1 mod d]`.
pub fn character_linearity(n: usize, d: u64, q: &Rational) -> Result<(CycElem, CycElem)> {
    let chars = enumerate_characters(d)?;
    let m = chars.iter().fold(1u64, |acc, c| acc.lcm(&c.value_order()));
    let field = CyclotomicField::new(m);
    let mut sum = CycElem::zero(&field);
    for chi in &chars {
        sum = sum.add(&chi_eulerian(n, chi, q)?.lift(&field));
    }
    let phi = chars.len() as i64;
    let kernel: Vec<CycElem> = (0..d)
        .map(|l| if l % d == 1 % d { CycElem::from_rational(&field, int(phi)) } else { CycElem::zero(&field) })
        .collect();
    let direct = chi_eulerian_with_kernel(n, q, &kernel)?.swap_remove(n);
    Ok((sum, direct))
}

/// `A_{n,chi_1}(-q) / A_n(-q)` for the modulus-1 character, when defined.
pub fn degenerate_ratio(n: usize, q: &Rational) -> Result<Option<Rational>> {
    let chi = crate::dirichlet::principal(1)?;
    let a = chi_eulerian(n, &chi, q)?.as_rational().expect("modulus-1 values are rational");
    let w = crate::eulerian::witt_value(n, q)?;
    Ok(if w.is_zero() { None } else { Some(a / w) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::{character, principal};
    use crate::exact::rational::rat;

    fn quad3() -> DirichletCharacter {
        character(3, 1).unwrap()
    }

    #[test]
    fn quadratic_mod_3_values() {
        let t = chi_eulerian_table(3, &quad3(), &int(2)).unwrap();
        let vals: Vec<Rational> = t.iter().map(|v| v.as_rational().unwrap()).collect();
        assert_eq!(vals, vec![int(-4), int(12), int(-12), int(-324)]);
    }

    #[test]
    fn closed_form_n0() {
        // -q^2 (1+q)^2 / (1+q^3)
        for q in [int(2), int(3), rat(7, 2)] {
            let a = chi_eulerian(0, &quad3(), &q).unwrap().as_rational().unwrap();
            let one_q = Rational::one() + &q;
            assert_eq!(a, -(&q * &q) * &one_q * &one_q / (Rational::one() + pow(&q, 3)));
        }
    }

    #[test]
    fn modulus_one_is_q_squared_times_eulerian() {
        let chi = principal(1).unwrap();
        let t = chi_eulerian_table(3, &chi, &int(2)).unwrap();
        let vals: Vec<Rational> = t.iter().map(|v| v.as_rational().unwrap()).collect();
        assert_eq!(vals, vec![int(4), int(4), int(-4), int(-12)]);
        assert_eq!(degenerate_ratio(5, &int(3)).unwrap(), Some(int(9)));
    }

    #[test]
    fn poles() {
        assert!(matches!(chi_eulerian(1, &quad3(), &int(0)), Err(Error::PoleQ { .. })));
        assert!(matches!(chi_eulerian(1, &quad3(), &int(-1)), Err(Error::PoleQ { .. })));
    }

    #[test]
    fn series_check_examples() {
        let c = chi_eulerian_series_check(0, &quad3(), &int(2), 128).unwrap();
        assert!(c.pass);
        assert_eq!(c.exact_lhs.as_rational(), Some(rat(-2, 3)));
        let c = chi_eulerian_series_check(1, &quad3(), &int(2), 128).unwrap();
        assert!(c.pass);
        assert_eq!(c.exact_lhs.as_rational(), Some(rat(-2, 3)));
        let c = chi_eulerian_series_check(4, &principal(1).unwrap(), &int(3), 128).unwrap();
        assert!(c.pass);
        assert!(matches!(chi_eulerian_series_check(0, &quad3(), &int(1), 128), Err(Error::ConvergenceDomain { .. })));
    }

    #[test]
    fn series_check_complex_character() {
        let chi = character(5, 1).unwrap();
        for n in 0..4 {
            assert!(chi_eulerian_series_check(n, &chi, &rat(7, 2), 128).unwrap().pass);
        }
    }

    #[test]
    fn weight_zero_examples() {
        assert_eq!(weight_zero_euler(0, &int(5), &rat(1, 3)).unwrap(), int(1));
        assert_eq!(weight_zero_euler(1, &int(2), &int(0)).unwrap(), rat(-2, 3));
        assert_eq!(weight_zero_euler(1, &int(2), &rat(2, 3)).unwrap(), int(0));
        assert_eq!(weight_zero_euler(2, &int(1), &int(0)).unwrap(), int(0));
        assert_eq!(weight_zero_genocchi(1, &int(2), &int(0)).unwrap(), int(1));
        assert_eq!(weight_zero_genocchi(2, &int(2), &int(0)).unwrap(), rat(-4, 3));
        assert_eq!(weight_zero_genocchi(3, &int(1), &int(0)).unwrap(), int(0));
        assert_eq!(weight_zero_euler(1, &int(-1), &int(0)), Err(Error::PoleAtMinusOne));
    }

    #[test]
    fn distribution_spot_values() {
        let r = verify_distribution(0, &quad3(), &[int(2)], Variant::Corrected).unwrap();
        let s = &r.samples[0];
        assert_eq!(s.rhs.as_rational(), Some(int(-1)));
        assert_eq!(s.lhs_corrected.as_rational(), Some(int(-1)));
        assert_eq!(s.lhs_printed.as_rational(), Some(int(-4)));
        assert_eq!(s.ratio.as_ref().unwrap().as_rational(), Some(int(4)));
        assert!(!r.pass, "one sample cannot prove the identity");
        let chi = principal(3).unwrap();
        let r = verify_distribution(0, &chi, &[int(3)], Variant::Corrected).unwrap();
        assert!(r.samples[0].genocchi_agrees);
    }

    #[test]
    fn distribution_corrected_holds() {
        for d in [1u64, 3, 5] {
            for chi in enumerate_characters(d).unwrap() {
                for n in 0..3 {
                    let qs = admissible_samples(distribution_sample_bound(n, d), d, &[int(2)]);
                    let r = verify_distribution(n, &chi, &qs, Variant::Corrected).unwrap();
                    assert!(r.pass, "d={d} {chi} n={n}");
                    assert!(r.samples.iter().all(|s| s.printed_is_q2_rhs));
                    let p = verify_distribution(n, &chi, &qs, Variant::Printed).unwrap();
                    assert!(!p.pass);
                }
            }
        }
    }

    #[test]
    fn sample_sequence() {
        let s = admissible_samples(6, 3, &[int(3), int(-1), int(3)]);
        assert_eq!(s, vec![int(3), int(2), rat(3, 2), int(4), rat(4, 3), int(5)]);
    }

    #[test]
    fn linearity_mod_5() {
        for n in 0..4 {
            let (sum, direct) = character_linearity(n, 5, &rat(7, 3)).unwrap();
            assert_eq!(sum, direct);
        }
    }
}
