//! Tanh-sinh quadrature on a finite interval `[0, T]`.

use astro_float::BigFloat;

use crate::error::{Error, Result};
use crate::exact::rational::rat;
use crate::numeric::{Bound, Mp, MpComplex};

pub struct Quadrature {
    pub value: MpComplex,
    /// Difference between the last two levels; the double-exponential
    /// error at the last level is roughly its square.
    pub estimate: Bound,
    pub levels: u32,
    pub nodes: usize,
}

/// Node pair `(t_-, t_+, weight)` at abscissa `x >= 0` for
/// `t = T/2 (1 + tanh(pi/2 sinh x))`.
fn node(mp: &mut Mp, t_max: &BigFloat, x: &BigFloat) -> (BigFloat, BigFloat, BigFloat) {
    let pi = mp.pi();
    let half_pi = mp.div(&pi, &mp.int(2));
    let sh = mp.sinh(x);
    let ch = mp.cosh(x);
    let u = mp.mul(&half_pi, &sh);
    let e = mp.exp(&mp.mul(&u, &mp.int(-2)));
    let one_e = mp.add(&mp.int(1), &e);
    let t_plus = mp.div(t_max, &one_e);
    let t_minus = mp.mul(&t_plus, &e);
    let w = mp.div(&mp.mul(&mp.mul(&mp.mul(t_max, &pi), &ch), &e), &mp.mul(&one_e, &one_e));
    (t_minus, t_plus, w)
}

/// Integrates `f` over `[0, T]`, refining the step `2^-level` until two
/// successive levels agree to `2^target_log2`. Abscissae run over
/// `|x| <= x_max`.
pub fn tanh_sinh<F>(
    mp: &mut Mp,
    t_max: &BigFloat,
    x_max: f64,
    target_log2: f64,
    max_level: u32,
    mut f: F,
) -> Result<Quadrature>
where
    F: FnMut(&mut Mp, &BigFloat) -> MpComplex,
{
    let mut sum = MpComplex::zero(mp);
    let mut nodes = 0usize;
    let mut prev: Option<MpComplex> = None;
    for level in 0..=max_level {
        let denom = 1i64 << level;
        let kmax = (x_max * denom as f64).ceil() as i64;
        let mut k = if level == 0 { 0 } else { 1 };
        let step = if level == 0 { 1 } else { 2 };
        while k <= kmax {
            let x = mp.rational(&rat(k, denom));
            let (t_minus, t_plus, w) = node(mp, t_max, &x);
            let fp = f(mp, &t_plus);
            sum = mp.cadd(&sum, &mp.cscale(&fp, &w));
            nodes += 1;
            if k != 0 {
                let fm = f(mp, &t_minus);
                sum = mp.cadd(&sum, &mp.cscale(&fm, &w));
                nodes += 1;
            }
            k += step;
        }
        let h = mp.rational(&rat(1, denom));
        let value = mp.cscale(&sum, &h);
        if let Some(p) = &prev {
            let diff = mp.cabs(&mp.csub(&value, p));
            let d = crate::numeric::log2_abs(&diff);
            if level >= 3 && d < target_log2 {
                return Ok(Quadrature { value, estimate: Bound::from_log2(d), levels: level, nodes });
            }
        }
        prev = Some(value);
    }
    Err(Error::NotConverged(format!("tanh-sinh quadrature did not settle within {max_level} levels")))
}
