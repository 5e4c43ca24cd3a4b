//! Complex Gamma function for `Re z > 0`: Stirling series after an upward
//! shift, with an explicit remainder bound.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::rational::{self, rat, Rational};
use crate::exact::{series_div, TruncSeries};
use crate::numeric::{Bound, Mp, MpComplex};

/// `B_0..=B_n` from `t / (e^t - 1)`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let one = TruncSeries::constant(rational::int(1), n);
    let den = TruncSeries::new((0..=n).map(|k| rat(1, k as i64 + 1)).collect());
    series_div(&one, &den).expect("constant term is 1").coeffs().to_vec()
}

/// `Gamma(z)` with a bound on its relative error.
pub struct GammaValue {
    pub value: MpComplex,
    pub relative_error: Bound,
    pub shift: u64,
    pub terms: usize,
}

/// Evaluates `Gamma(z)` at the context precision for `Re z > 0`.
pub fn gamma(mp: &mut Mp, z: &MpComplex) -> Result<GammaValue> {
    if !z.re.is_positive() {
        return Err(Error::DomainError("Gamma is evaluated only for Re z > 0".into()));
    }
    let wp = mp.prec() as f64;
    let (re, im) = z.to_f64_pair();
    // Stirling needs |w| large and |arg w| <= pi/4.
    let target = (0.15 * wp + 8.0).max(im.abs());
    let shift = if re >= target { 0 } else { (target - re).ceil() as u64 };
    let mut w = z.clone();
    let mut prod = MpComplex::real(mp.int(1), mp);
    for _ in 0..shift {
        prod = mp.cmul(&prod, &w);
        w = mp.cadd(&w, &MpComplex::real(mp.int(1), mp));
    }
    let (wr, wi) = w.to_f64_pair();
    let log2_w = 0.5 * (wr * wr + wi * wi).log2();
    let theta = wi.atan2(wr).abs();
    let log2_sec = -(theta / 2.0).cos().log2();

    // Number of correction terms J from the remainder bound
    // |B_{2J+2}| / ((2J+2)(2J+1) |w|^{2J+1}) sec^{2J+2}(theta/2);
    // for |w| >= 0.15 wp + 8 it falls below 2^-wp before 2J = wp/2.
    let bern = bernoulli_numbers(wp as usize / 2 + 16);
    let mut terms = 0usize;
    let mut remainder = f64::INFINITY;
    for j in 0..bern.len() / 2 - 1 {
        let b = &bern[2 * j + 2];
        let jj = (2 * j + 2) as f64;
        let r = rational::log2_abs(b) - ((jj) * (jj - 1.0)).log2() - (jj - 1.0) * log2_w + jj * log2_sec;
        if r < -wp - 4.0 {
            terms = j;
            remainder = r;
            break;
        }
    }
    if remainder.is_infinite() {
        return Err(Error::NotConverged("Stirling series did not reach working precision".into()));
    }

    // ln Gamma(w) = (w - 1/2) ln w - w + ln(2 pi)/2 + sum_j B_2j / (2j (2j-1) w^{2j-1})
    let ln_w = mp.cln(&w);
    let half = mp.rational(&rat(1, 2));
    let w_half = MpComplex::new(mp.sub(&w.re, &half), w.im.clone());
    let mut acc = mp.csub(&mp.cmul(&w_half, &ln_w), &w);
    let pi = mp.pi();
    let two_pi = mp.mul(&pi, &mp.int(2));
    let ln_2pi = mp.ln(&two_pi);
    acc.re = mp.add(&acc.re, &mp.mul(&ln_2pi, &half));
    let one = MpComplex::real(mp.int(1), mp);
    let w_inv = mp.cdiv(&one, &w);
    let w_inv2 = mp.cmul(&w_inv, &w_inv);
    let mut w_pow = w_inv;
    for j in 1..=terms {
        let b = &bern[2 * j];
        if !b.is_zero() {
            let c = b / Rational::from_integer(((2 * j) * (2 * j - 1)).into());
            let cf = mp.rational(&c);
            acc = mp.cadd(&acc, &mp.cscale(&w_pow, &cf));
        }
        w_pow = mp.cmul(&w_pow, &w_inv2);
    }
    let gamma_w = mp.cexp(&acc);
    let value = mp.cdiv(&gamma_w, &prod);
    // remainder enters through exp; rounding grows with |ln Gamma| and the shift
    let ln_size = acc.log2_abs().max(0.0);
    let rounding = Bound::pow2(-wp + ln_size + ((shift + terms as u64 + 8) as f64).log2() + 4.0);
    Ok(GammaValue { value, relative_error: Bound::pow2(remainder + 1.0).plus(rounding), shift, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn bernoulli_values() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[0], int(1));
        assert_eq!(b[1], rat(-1, 2));
        assert_eq!(b[2], rat(1, 6));
        assert_eq!(b[3], int(0));
        assert_eq!(b[4], rat(-1, 30));
        assert_eq!(b[12], rat(-691, 2730));
    }

    fn close(a: &MpComplex, b: &MpComplex, mp: &Mp, log2_tol: f64) -> bool {
        let d = mp.cabs(&mp.csub(a, b));
        crate::numeric::log2_abs(&d) <= log2_tol
    }

    #[test]
    fn integer_and_half_integer_values() {
        let mut mp = Mp::new(192);
        let five = MpComplex::real(mp.int(5), &mp);
        let g5 = gamma(&mut mp, &five).unwrap();
        assert!(close(&g5.value, &MpComplex::real(mp.int(24), &mp), &mp, -170.0));
        let half = MpComplex::real(mp.rational(&rat(1, 2)), &mp);
        let gh = gamma(&mut mp, &half).unwrap();
        let pi = mp.pi();
        let sqrt_pi = mp.sqrt(&pi);
        assert!(close(&gh.value, &MpComplex::real(sqrt_pi, &mp), &mp, -170.0));
        assert!(gh.relative_error.log2() < -160.0);
    }

    #[test]
    fn complex_modulus() {
        // |Gamma(1 + i)|^2 = pi / sinh(pi)
        let mut mp = Mp::new(160);
        let z = MpComplex::new(mp.int(1), mp.int(1));
        let g = gamma(&mut mp, &z).unwrap();
        let pi = mp.pi();
        let sh = mp.sinh(&pi);
        let expect = mp.div(&pi, &sh);
        let abs2 = mp.add(&mp.mul(&g.value.re, &g.value.re), &mp.mul(&g.value.im, &g.value.im));
        let diff = mp.sub(&abs2, &expect);
        assert!(crate::numeric::log2_abs(&diff) < -140.0);
    }

    #[test]
    fn rejects_left_half_plane() {
        let mut mp = Mp::new(64);
        let z = MpComplex::real(mp.int(-1), &mp);
        assert!(matches!(gamma(&mut mp, &z), Err(Error::DomainError(_))));
    }
}
