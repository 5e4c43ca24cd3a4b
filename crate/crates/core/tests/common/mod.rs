//! Strategies and property bodies shared by the property tests and the
//! acceptance harness.

#![allow(dead_code, clippy::eq_op)]

use eulerchi::dirichlet::{char_eval, enumerate_characters, inner_product, phi};
use eulerchi::exact::cyclotomic::CyclotomicField;
use eulerchi::exact::rational::{rat, Rational};
use eulerchi::exact::{cyc_reduce, series_div, CycElem, PadicResidue, PolyQ, TruncSeries};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type PropResult = Result<(), TestCaseError>;

pub const CYC_ORDERS: [u64; 10] = [1, 3, 4, 5, 6, 7, 8, 9, 12, 15];
pub const ODD_MODULI: [u64; 12] = [1, 3, 5, 7, 9, 11, 15, 21, 25, 27, 35, 45];

pub fn rational() -> impl Strategy<Value = Rational> + Clone {
    (-60i64..60, 1i64..24).prop_map(|(a, b)| rat(a, b))
}

pub fn poly() -> impl Strategy<Value = PolyQ> + Clone {
    prop::collection::vec(rational(), 0..6).prop_map(PolyQ::new)
}

/// Raw polynomial of degree below `2 * phi(m)` with its order.
pub fn raw_cyc() -> impl Strategy<Value = (u64, PolyQ, PolyQ, PolyQ)> {
    prop::sample::select(CYC_ORDERS.to_vec()).prop_flat_map(|m| {
        let len = 2 * phi(m) as usize;
        let p = || prop::collection::vec(rational(), 0..=len).prop_map(PolyQ::new);
        (Just(m), p(), p(), p())
    })
}

pub fn triple<T: Strategy + Clone>(s: T) -> impl Strategy<Value = (T::Value, T::Value, T::Value)> {
    (s.clone(), s.clone(), s)
}

pub fn rational_ring_laws((a, b, c): (Rational, Rational, Rational)) -> PropResult {
    prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    prop_assert_eq!(&a * &b, &b * &a);
    prop_assert_eq!(&a - &a, Rational::zero());
    if !a.is_zero() {
        prop_assert_eq!(&a * &a.recip(), Rational::one());
    }
    Ok(())
}

pub fn poly_ring_laws((a, b, c): (PolyQ, PolyQ, PolyQ)) -> PropResult {
    prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    prop_assert_eq!(&a * &b, &b * &a);
    prop_assert!((&a - &a).is_zero());
    Ok(())
}

pub fn cyc_ring_laws((m, a, b, c): (u64, PolyQ, PolyQ, PolyQ)) -> PropResult {
    let f = CyclotomicField::new(m);
    let (x, y, z) = (CycElem::reduce(&f, &a), CycElem::reduce(&f, &b), CycElem::reduce(&f, &c));
    prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
    prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
    prop_assert_eq!(x.mul(&y), y.mul(&x));
    if !x.is_zero() {
        prop_assert_eq!(x.mul(&x.inverse().unwrap()), CycElem::one(&f));
    }
    Ok(())
}

pub fn cyc_reduce_homomorphism((m, a, b, _): (u64, PolyQ, PolyQ, PolyQ)) -> PropResult {
    prop_assert_eq!(cyc_reduce(&(&a * &b), m), cyc_reduce(&a, m).mul(&cyc_reduce(&b, m)));
    prop_assert_eq!(cyc_reduce(&(&a + &b), m), cyc_reduce(&a, m).add(&cyc_reduce(&b, m)));
    Ok(())
}

/// `(p, k, a, b)` with denominators prime to `p`.
pub fn padic_pair() -> impl Strategy<Value = (u64, u32, Rational, Rational)> {
    (prop::sample::select(vec![3u64, 5, 7]), 1u32..=8).prop_flat_map(|(p, k)| {
        let r = move || {
            (-10_000i64..10_000, 1i64..500)
                .prop_filter("denominator prime to p", move |(_, b)| b % p as i64 != 0)
                .prop_map(|(a, b)| rat(a, b))
        };
        (Just(p), Just(k), r(), r())
    })
}

pub fn padic_homomorphism((p, k, a, b): (u64, u32, Rational, Rational)) -> PropResult {
    let e = |r: &Rational| PadicResidue::from_rational(r, p, k).unwrap();
    prop_assert_eq!(e(&(&a + &b)), e(&a).add(&e(&b)));
    prop_assert_eq!(e(&(&a * &b)), e(&a).mul(&e(&b)));
    prop_assert_eq!(e(&(&a - &b)), e(&a).sub(&e(&b)));
    Ok(())
}

/// `(a, b)` of equal order with `b_0 != 0`.
pub fn series_pair() -> impl Strategy<Value = (TruncSeries, TruncSeries)> {
    (0usize..9).prop_flat_map(|order| {
        let a = prop::collection::vec(rational(), order + 1).prop_map(TruncSeries::new);
        let b = (
            rational().prop_filter("nonzero constant term", |c| !c.is_zero()),
            prop::collection::vec(rational(), order),
        )
            .prop_map(|(c0, rest)| TruncSeries::new(std::iter::once(c0).chain(rest).collect()));
        (a, b)
    })
}

pub fn series_div_inverts_mul((a, b): (TruncSeries, TruncSeries)) -> PropResult {
    let q = series_div(&a.mul(&b), &b).unwrap();
    prop_assert_eq!(q.coeffs(), a.coeffs());
    Ok(())
}

/// Random odd modulus with two character indices and two integers.
pub fn character_case() -> impl Strategy<Value = (u64, usize, usize, i64, i64)> {
    (prop::sample::select(ODD_MODULI.to_vec()), any::<usize>(), any::<usize>(), -500i64..500, -500i64..500)
}

pub fn orthogonality((d, i, j, _, _): (u64, usize, usize, i64, i64)) -> PropResult {
    let chars = enumerate_characters(d).unwrap();
    let (a, b) = (&chars[i % chars.len()], &chars[j % chars.len()]);
    let ip = inner_product(a, b);
    let expect = if a.exponents() == b.exponents() { phi(d) as i64 } else { 0 };
    prop_assert_eq!(ip.as_rational(), Some(rat(expect, 1)));
    Ok(())
}

pub fn multiplicativity((d, i, _, x, y): (u64, usize, usize, i64, i64)) -> PropResult {
    let chars = enumerate_characters(d).unwrap();
    let chi = &chars[i % chars.len()];
    prop_assert_eq!(char_eval(chi, x * y), char_eval(chi, x).mul(&char_eval(chi, y)));
    prop_assert_eq!(char_eval(chi, x), char_eval(chi, x + d as i64));
    Ok(())
}
