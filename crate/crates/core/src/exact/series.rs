//! Truncated exponential generating series `sum c_n t^n / n!`.

use num_traits::{One, Zero};

use super::rational::{binomial_row, Rational};
use crate::error::{Error, Result};

/// Truncated series in exponential-generating form; holds `c_0..=c_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    /// Panics on an empty coefficient vector.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least c_0");
        TruncSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `e^{a t}`, i.e. `c_n = a^n`.
    pub fn exp_linear(a: &Rational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut p = Rational::one();
        for _ in 0..=order {
            coeffs.push(p.clone());
            p *= a;
        }
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let n = self.order().min(other.order());
        TruncSeries { coeffs: (0..=n).map(|k| f(&self.coeffs[k], &other.coeffs[k])).collect() }
    }

    /// Product with binomial convolution, truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                let row = binomial_row(n);
                (0..=n).fold(Rational::zero(), |acc, k| acc + &row[k] * &self.coeffs[k] * &other.coeffs[n - k])
            })
            .collect();
        TruncSeries { coeffs }
    }

    /// Quotient `Q` with `sum_k C(n,k) Q_k den_{n-k} = num_n` for every `n <= N`.
    pub fn div(&self, den: &Self) -> Result<Self> {
        if self.order() != den.order() {
            return Err(Error::InvalidArgument(format!("series orders differ: {} vs {}", self.order(), den.order())));
        }
        if den.coeffs[0].is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let inv0 = den.coeffs[0].recip();
        let mut q: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        for n in 0..=self.order() {
            let row = binomial_row(n);
            let known = (0..n).fold(Rational::zero(), |acc, k| acc + &row[k] * &q[k] * &den.coeffs[n - k]);
            q.push((&self.coeffs[n] - known) * &inv0);
        }
        Ok(TruncSeries { coeffs: q })
    }
}

/// Truncated exponential-series quotient `num / den`.
pub fn series_div(num: &TruncSeries, den: &TruncSeries) -> Result<TruncSeries> {
    num.div(den)
}
