//! Reference implementations kept deliberately naive and independent of the
//! library internals.
#![allow(dead_code)]

use std::collections::BTreeSet;

use maxcycle_core::{Rational, StateK};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

pub fn big(s: &StateK) -> Vec<BigRational> {
    s.entries()
        .iter()
        .map(|v| v.as_big_rational().clone())
        .collect()
}

pub fn from_big(v: &[BigRational]) -> StateK {
    StateK::new(v.iter().cloned().map(Rational::from).collect()).unwrap()
}

pub fn naive_step(w: &[BigRational]) -> Vec<BigRational> {
    let mut m = BigRational::zero();
    for v in &w[1..] {
        if *v > m {
            m = v.clone();
        }
    }
    let mut out = w[1..].to_vec();
    out.push(m - &w[0]);
    out
}

/// Smallest `p <= cap` with `F^p(w) = w`, by plain window iteration.
pub fn naive_period(w: &[BigRational], cap: usize) -> Option<usize> {
    let mut cur = naive_step(w);
    for p in 1..=cap {
        if cur == w {
            return Some(p);
        }
        cur = naive_step(&cur);
    }
    None
}

pub fn naive_iterate(w: &[BigRational], n: usize) -> Vec<BigRational> {
    let mut cur = w.to_vec();
    for _ in 0..n {
        cur = naive_step(&cur);
    }
    cur
}

/// Members of the order-4 period set up to `limit`, built by enumerating
/// pairs `(a, b)` rather than scanning each `n`.
pub fn naive_members(limit: u64) -> BTreeSet<u64> {
    let mut out: BTreeSet<u64> = [1, 8, 11].into_iter().filter(|&n| n <= limit).collect();
    let mut a = 1;
    while 10 * a + 11 * (2 * a + 1) <= limit {
        let mut b = 2 * a + 1;
        while 10 * a + 11 * b <= limit {
            if a.gcd(&b) == 1 {
                out.insert(10 * a + 11 * b);
            }
            b += 1;
        }
        a += 1;
    }
    out
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Rationals `n / d` with `|n| <= bound` and `1 <= d <= den`.
pub fn rational_strategy(bound: i64, den: i64) -> impl Strategy<Value = Rational> {
    (-bound..=bound, 1..=den).prop_map(|(n, d)| Rational::ratio(n, d))
}

pub fn nonneg_rational(bound: i64, den: i64) -> impl Strategy<Value = Rational> {
    (0..=bound, 1..=den).prop_map(|(n, d)| Rational::ratio(n, d))
}

pub fn state_strategy(k: usize, bound: i64, den: i64) -> impl Strategy<Value = StateK> {
    prop::collection::vec(rational_strategy(bound, den), k).prop_map(|v| StateK::new(v).unwrap())
}

pub fn positive_rational(bound: i64, den: i64) -> impl Strategy<Value = Rational> {
    (1..=bound, 1..=den).prop_map(|(n, d)| Rational::ratio(n, d))
}
