//! States of the order-k recurrence and the exact forward/backward maps.
//!
//! A [`StateK`] is one window `(x_1, ..., x_k)`, oldest entry first. The
//! forward map is
//!
//! ```text
//! (x_1, ..., x_k) -> (x_2, ..., x_k, max{x_2, ..., x_k, 0} - x_1)
//! ```
//!
//! and it is a bijection of Q^k; [`StateK::step_back`] is its inverse.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::detector::{detect_period, DetectionOutcome};
use crate::error::{OrbitError, ParseError};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct StateK {
    entries: Vec<Rational>,
}

/// max{values..., 0}
pub(crate) fn max_with_zero<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    let zero = Rational::zero();
    let mut best = &zero;
    for v in values {
        if v > best {
            best = v;
        }
    }
    best.clone()
}

impl StateK {
    pub fn new(entries: Vec<Rational>) -> Result<Self, ParseError> {
        if entries.len() < 2 {
            return Err(ParseError::OrderTooSmall(entries.len()));
        }
        Ok(StateK { entries })
    }

    /// Convenience constructor from integers. Panics if fewer than two values.
    pub fn from_ints(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| Rational::from(v)).collect()).expect("order >= 2")
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![Rational::zero(); order]).expect("order >= 2")
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// Entry `i`, 1-based so it reads like `x_i`.
    pub fn x(&self, i: usize) -> &Rational {
        &self.entries[i - 1]
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    /// The value the forward map appends: `max{x_2..x_k, 0} - x_1`.
    pub fn next_value(&self) -> Rational {
        max_with_zero(&self.entries[1..]) - &self.entries[0]
    }

    pub fn step(&self) -> StateK {
        let mut entries = Vec::with_capacity(self.order());
        entries.extend_from_slice(&self.entries[1..]);
        entries.push(self.next_value());
        StateK { entries }
    }

    pub fn step_back(&self) -> StateK {
        let k = self.order();
        let oldest = max_with_zero(&self.entries[..k - 1]) - &self.entries[k - 1];
        let mut entries = Vec::with_capacity(k);
        entries.push(oldest);
        entries.extend_from_slice(&self.entries[..k - 1]);
        StateK { entries }
    }

    pub fn iterate(&self, n: u64) -> StateK {
        let mut s = self.clone();
        for _ in 0..n {
            s = s.step();
        }
        s
    }

    pub fn iterate_back(&self, n: u64) -> StateK {
        let mut s = self.clone();
        for _ in 0..n {
            s = s.step_back();
        }
        s
    }

    /// Multiplies every entry by `factor > 0`. Positive scaling commutes with
    /// the recurrence, so the scaled orbit has the same period.
    pub fn scale(&self, factor: &Rational) -> Result<StateK, OrbitError> {
        if !factor.is_positive() {
            return Err(OrbitError::NonPositiveScale(factor.to_string()));
        }
        Ok(StateK {
            entries: self.entries.iter().map(|v| v * factor).collect(),
        })
    }

    /// Records the next `n` values produced by the forward map.
    pub fn segment(&self, n: usize) -> OrbitSegment {
        let mut values = Vec::with_capacity(n);
        let mut s = self.clone();
        for _ in 0..n {
            let v = s.next_value();
            values.push(v.clone());
            let mut entries = Vec::with_capacity(s.order());
            entries.extend_from_slice(&s.entries[1..]);
            entries.push(v);
            s = StateK { entries };
        }
        OrbitSegment {
            start: self.clone(),
            values,
        }
    }

    pub fn max_entry(&self) -> &Rational {
        self.entries.iter().max().expect("nonempty state")
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|v| !v.is_negative())
    }
}

impl TryFrom<Vec<Rational>> for StateK {
    type Error = ParseError;
    fn try_from(entries: Vec<Rational>) -> Result<Self, Self::Error> {
        StateK::new(entries)
    }
}

impl From<StateK> for Vec<Rational> {
    fn from(s: StateK) -> Self {
        s.entries
    }
}

impl fmt::Display for StateK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for StateK {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let entries = s
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<Rational>, _>>()?;
        StateK::new(entries)
    }
}

/// A finite stretch of an orbit: `values[i]` is the value appended by the
/// `(i+1)`-th forward step from `start`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSegment {
    pub start: StateK,
    pub values: Vec<Rational>,
}

impl OrbitSegment {
    /// Re-simulates from `start` and checks every recorded value.
    pub fn is_consistent(&self) -> bool {
        let mut s = self.start.clone();
        for v in &self.values {
            if &s.next_value() != v {
                return false;
            }
            s = s.step();
        }
        true
    }

    /// The window reached after all recorded steps.
    pub fn end(&self) -> StateK {
        let k = self.start.order();
        let mut all: Vec<Rational> = self.start.entries().to_vec();
        all.extend_from_slice(&self.values);
        StateK::new(all[all.len() - k..].to_vec()).expect("order >= 2")
    }
}

/// Decides whether `s` and `t` generate the same bi-infinite sequence up to
/// an index shift.
///
/// Periodic orbits are compared through their canonical cycle rotations.
/// When neither orbit closes within `cap` steps, `t` is searched for among
/// the windows at most `cap` steps forward or backward of `s`.
pub fn shift_equivalent(s: &StateK, t: &StateK, cap: u64) -> Result<bool, OrbitError> {
    if s.order() != t.order() {
        return Err(OrbitError::OrderMismatch(s.order(), t.order()));
    }
    if s == t {
        return Ok(true);
    }
    match (detect_period(s, cap), detect_period(t, cap)) {
        (DetectionOutcome::Periodic(a), DetectionOutcome::Periodic(b)) => {
            Ok(a.period == b.period && a.canonical_cycle() == b.canonical_cycle())
        }
        // a periodic sequence never coincides with a non-periodic one
        (DetectionOutcome::Periodic(_), DetectionOutcome::NotClosed { .. })
        | (DetectionOutcome::NotClosed { .. }, DetectionOutcome::Periodic(_)) => Ok(false),
        (DetectionOutcome::NotClosed { .. }, DetectionOutcome::NotClosed { .. }) => {
            let mut fwd = s.clone();
            let mut back = s.clone();
            for _ in 0..cap {
                fwd = fwd.step();
                back = back.step_back();
                if &fwd == t || &back == t {
                    return Ok(true);
                }
            }
            Err(OrbitError::Undecided(cap))
        }
    }
}
