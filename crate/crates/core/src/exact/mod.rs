//! Exact kernels: rationals, polynomials, cyclotomic fields, truncated
//! exponential series and residues mod p^k.

pub mod cyclotomic;
pub mod padic;
pub mod poly;
pub mod rational;
pub mod series;

use num_traits::{One, Zero};

pub use cyclotomic::{cyc_embed, cyc_reduce, cyclotomic_polynomial, CycElem, CyclotomicField};
pub use padic::PadicResidue;
pub use poly::PolyQ;
pub use rational::Rational;
pub use series::{series_div, TruncSeries};

use crate::error::{Error, Result};

/// The q-integer `[x]_Q = (1 - Q^x) / (1 - Q)`.
pub fn q_number(x: i64, q: &Rational) -> Result<Rational> {
    if q.is_one() {
        return Err(Error::QIsOne);
    }
    if x == 0 {
        return Ok(Rational::zero());
    }
    if q.is_zero() {
        if x < 0 {
            return Err(Error::NotAUnit("0".into()));
        }
        return Ok(Rational::one());
    }
    let qx = rational::pow(q, x);
    Ok((Rational::one() - qx) / (Rational::one() - q))
}
