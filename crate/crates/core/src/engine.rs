//! Integer orbit loop behind the period detector.
//!
//! A rational state is multiplied by the lcm of its denominators so that the
//! whole orbit lives in Z (positive scaling commutes with the map). The loop
//! first runs on `i64` with checked subtraction and restarts on `BigInt` if a
//! value ever leaves the `i64` range.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::orbit::StateK;
use crate::rational::{common_denominator, Rational};

pub(crate) trait Lane: Clone + Ord {
    fn zero() -> Self;
    fn checked_sub(&self, rhs: &Self) -> Option<Self>;
}

impl Lane for i64 {
    fn zero() -> Self {
        0
    }
    fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        i64::checked_sub(*self, *rhs)
    }
}

impl Lane for BigInt {
    fn zero() -> Self {
        BigInt::from(0)
    }
    fn checked_sub(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }
}

pub(crate) enum LaneRun<T> {
    /// First return after `period` steps; `seq` holds at least `period` values.
    Closed {
        period: u64,
        seq: Vec<T>,
    },
    NotClosed,
    Overflow,
}

/// Iterates from `init` until the initial window recurs or `cap` steps pass.
pub(crate) fn run_lane<T: Lane>(init: &[T], cap: u64) -> LaneRun<T> {
    let k = init.len();
    let mut seq: Vec<T> = init.to_vec();
    let zero = T::zero();
    for t in 1..=cap {
        let n = seq.len();
        let oldest = &seq[n - k];
        let mut best = &zero;
        for v in &seq[n - k + 1..] {
            if v > best {
                best = v;
            }
        }
        let next = match best.checked_sub(oldest) {
            Some(v) => v,
            None => return LaneRun::Overflow,
        };
        seq.push(next);
        let start = t as usize;
        if seq[start] == init[0] && seq[start..start + k] == *init {
            seq.truncate(start.max(1));
            return LaneRun::Closed { period: t, seq };
        }
    }
    LaneRun::NotClosed
}

/// Index of the lexicographically least rotation of `s` (smallest such index).
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let (mut i, mut j, mut off) = (0usize, 1usize, 0usize);
    while i < n && j < n && off < n {
        let a = &s[(i + off) % n];
        let b = &s[(j + off) % n];
        match a.cmp(b) {
            std::cmp::Ordering::Equal => off += 1,
            std::cmp::Ordering::Greater => {
                i += off + 1;
                if i <= j {
                    i = j + 1;
                }
                off = 0;
            }
            std::cmp::Ordering::Less => {
                j += off + 1;
                if j <= i {
                    j = i + 1;
                }
                off = 0;
            }
        }
    }
    i.min(j)
}

/// A closed orbit found by the integer loop, already mapped back to Q.
pub(crate) struct ClosedOrbit {
    pub period: u64,
    pub cycle: Vec<Rational>,
    pub max_index: usize,
    pub rotation: usize,
}

fn finish<T: Lane>(
    period: u64,
    mut seq: Vec<T>,
    to_big: impl Fn(&T) -> BigInt,
    scale: &BigInt,
) -> ClosedOrbit {
    seq.truncate(period as usize);
    let rotation = least_rotation(&seq);
    let max_index = seq
        .iter()
        .enumerate()
        .fold(0, |acc, (i, v)| if *v > seq[acc] { i } else { acc });
    let cycle = seq
        .iter()
        .map(|v| Rational::new(to_big(v), scale.clone()).expect("positive scale"))
        .collect();
    ClosedOrbit {
        period,
        cycle,
        max_index,
        rotation,
    }
}

/// Runs the orbit of `s` for at most `cap` steps. `None` means no return.
pub(crate) fn closed_orbit(s: &StateK, cap: u64) -> Option<ClosedOrbit> {
    let scale = common_denominator(s.entries());
    let big: Vec<BigInt> = s
        .entries()
        .iter()
        .map(|v| v.numer() * (&scale / v.denom()))
        .collect();
    let small: Option<Vec<i64>> = big.iter().map(|v| v.to_i64()).collect();
    if let Some(small) = small {
        match run_lane(&small, cap) {
            LaneRun::Closed { period, seq } => {
                return Some(finish(period, seq, |v| BigInt::from(*v), &scale))
            }
            LaneRun::NotClosed => return None,
            LaneRun::Overflow => {}
        }
    }
    match run_lane(&big, cap) {
        LaneRun::Closed { period, seq } => Some(finish(period, seq, |v| v.clone(), &scale)),
        LaneRun::NotClosed | LaneRun::Overflow => None,
    }
}
