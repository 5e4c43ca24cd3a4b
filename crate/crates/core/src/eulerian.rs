//! Classical Eulerian polynomials: recurrence engine and generating-function
//! oracle.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::{binomial_row, factorial, int, Rational};
use crate::exact::{series_div, PolyQ, TruncSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerianPoly {
    pub n: usize,
    pub poly: PolyQ,
}

impl EulerianPoly {
    /// Coefficients as integers, lowest degree first.
    pub fn int_coeffs(&self) -> Vec<num_bigint::BigInt> {
        self.poly.coeffs().iter().map(|c| c.to_integer()).collect()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.poly.eval(t)
    }
}

/// `A_0..=A_max` from `A_n(t) = sum_{k<n} C(n,k) A_k(t) (t-1)^{n-1-k}`.
pub fn eulerian_table(max: usize) -> Vec<EulerianPoly> {
    let t_minus_1 = PolyQ::from_ints(&[-1, 1]);
    let mut powers = vec![PolyQ::one()];
    for i in 1..max.max(1) {
        powers.push(&powers[i - 1] * &t_minus_1);
    }
    let mut out: Vec<EulerianPoly> = vec![EulerianPoly { n: 0, poly: PolyQ::one() }];
    for n in 1..=max {
        let row = binomial_row(n);
        let poly = (0..n).fold(PolyQ::zero(), |acc, k| &acc + &(&out[k].poly * &powers[n - 1 - k]).scale(&row[k]));
        out.push(EulerianPoly { n, poly });
    }
    out
}

pub fn eulerian_poly(n: usize) -> EulerianPoly {
    eulerian_table(n).pop().expect("table is nonempty")
}

/// Coefficients `B_0..=B_n` of `(1 - x0) / (e^{t(1 - x0)} - x0)`.
pub fn eulerian_series(n: usize, x0: &Rational) -> Result<Vec<Rational>> {
    if x0.is_one() {
        return Err(Error::PoleAtOne);
    }
    let a = Rational::one() - x0;
    let num = TruncSeries::constant(a.clone(), n);
    let den = TruncSeries::exp_linear(&a, n).sub(&TruncSeries::constant(x0.clone(), n));
    Ok(series_div(&num, &den)?.coeffs().to_vec())
}

/// The `t^n/n!` coefficient of `(1 - x0) / (e^{t(1 - x0)} - x0)`.
pub fn eulerian_series_coeff(n: usize, x0: &Rational) -> Result<Rational> {
    Ok(eulerian_series(n, x0)?.swap_remove(n))
}

/// `A_n(-q)`.
pub fn witt_value(n: usize, q: &Rational) -> Result<Rational> {
    if (q + Rational::one()).is_zero() {
        return Err(Error::PoleAtMinusOne);
    }
    Ok(eulerian_poly(n).eval(&-q))
}

/// `A_0(-q)..=A_max(-q)`.
pub fn witt_values(max: usize, q: &Rational) -> Result<Vec<Rational>> {
    if (q + Rational::one()).is_zero() {
        return Err(Error::PoleAtMinusOne);
    }
    Ok(eulerian_table(max).iter().map(|a| a.eval(&-q)).collect())
}

/// `sum_{k<=n} C(n,k) A_k(t) (t-1)^{n-k} - t A_n(t)`: zero for `n >= 1`, `1 - t` at `n = 0`.
pub fn recurrence_residual(table: &[EulerianPoly], n: usize) -> PolyQ {
    let t_minus_1 = PolyQ::from_ints(&[-1, 1]);
    let row = binomial_row(n);
    let sum =
        (0..=n).fold(PolyQ::zero(), |acc, k| &acc + &(&table[k].poly * &t_minus_1.pow((n - k) as u32)).scale(&row[k]));
    &sum - &(&PolyQ::x() * &table[n].poly)
}

/// Structural checks on `A_n`; returns the first violated property.
pub fn check_structure(a: &EulerianPoly) -> std::result::Result<(), String> {
    let n = a.n;
    let expected_degree = n.saturating_sub(1);
    if a.poly.degree() != Some(expected_degree) {
        return Err(format!("A_{n}: degree {:?}, expected {expected_degree}", a.poly.degree()));
    }
    let c = a.poly.coeffs();
    if c.iter().any(|x| !x.is_integer() || !x.is_positive()) {
        return Err(format!("A_{n}: coefficients not positive integers"));
    }
    if c.iter().ne(c.iter().rev()) {
        return Err(format!("A_{n}: not palindromic"));
    }
    if a.poly.eval(&int(1)) != Rational::from_integer(factorial(n as u64)) {
        return Err(format!("A_{n}(1) != {n}!"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn small_polynomials() {
        assert_eq!(eulerian_poly(0).poly, PolyQ::one());
        assert_eq!(eulerian_poly(1).poly, PolyQ::one());
        assert_eq!(eulerian_poly(2).poly, PolyQ::from_ints(&[1, 1]));
        assert_eq!(eulerian_poly(3).poly, PolyQ::from_ints(&[1, 4, 1]));
        assert_eq!(eulerian_poly(5).poly, PolyQ::from_ints(&[1, 26, 66, 26, 1]));
    }

    #[test]
    fn series_examples() {
        assert_eq!(eulerian_series_coeff(0, &int(5)).unwrap(), int(1));
        assert_eq!(eulerian_series_coeff(1, &int(2)).unwrap(), int(-1));
        assert_eq!(eulerian_series_coeff(2, &int(2)).unwrap(), int(3));
        assert_eq!(eulerian_series_coeff(2, &int(1)), Err(Error::PoleAtOne));
    }

    #[test]
    fn witt_examples() {
        assert_eq!(witt_value(1, &int(9)).unwrap(), int(1));
        assert_eq!(witt_value(2, &int(2)).unwrap(), int(-1));
        assert_eq!(witt_value(0, &int(7)).unwrap(), int(1));
        assert_eq!(witt_value(3, &int(8)).unwrap(), int(33));
        assert_eq!(witt_value(3, &int(-1)), Err(Error::PoleAtMinusOne));
    }

    #[test]
    fn structure_and_residual() {
        let table = eulerian_table(25);
        for a in &table {
            check_structure(a).unwrap();
        }
        assert_eq!(recurrence_residual(&table, 0), PolyQ::from_ints(&[1, -1]));
        for n in 1..=25 {
            assert!(recurrence_residual(&table, n).is_zero(), "n = {n}");
        }
    }

    #[test]
    fn sign_reconciliation() {
        let table = eulerian_table(12);
        for x0 in [int(0), int(2), int(-1), rat(1, 2), rat(5, 3)] {
            let b = eulerian_series(12, &x0).unwrap();
            for (n, a) in table.iter().enumerate() {
                let sign = if n % 2 == 0 { int(1) } else { int(-1) };
                assert_eq!(b[n], sign * a.eval(&x0), "n = {n}, x0 = {x0}");
            }
        }
    }
}
