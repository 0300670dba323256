//! First-return period detection with self-checking certificates.
//!
//! The forward map is injective, so an orbit that ever repeats a window
//! repeats its initial window first. Detection therefore only compares
//! against the start state, and the first return time is the exact period.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{closed_orbit, least_rotation};
use crate::orbit::{max_with_zero, StateK};
use crate::rational::Rational;

pub const DEFAULT_CAP: u64 = 1_000_000;

/// Evidence that `initial` is periodic with minimal period `period`.
///
/// `cycle[i]` is the `(i+1)`-th term of the sequence generated by
/// `initial`, so the first `min(k, period)` entries agree with `initial`.
/// `rotation` is the start index of the lexicographically least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodCertificate {
    pub k: usize,
    pub initial: StateK,
    pub period: u64,
    pub cycle: Vec<Rational>,
    pub max: Rational,
    pub rotation: usize,
}

impl PeriodCertificate {
    /// The cycle rotated to start at `rotation`.
    pub fn canonical_cycle(&self) -> Vec<Rational> {
        self.rotated(self.rotation)
    }

    /// The cycle rotated to start at index `start`.
    pub fn rotated(&self, start: usize) -> Vec<Rational> {
        let p = self.cycle.len();
        (0..p)
            .map(|i| self.cycle[(start + i) % p].clone())
            .collect()
    }

    /// The k-window of the periodic sequence starting at cycle index `start`.
    pub fn window_at(&self, start: usize) -> StateK {
        let p = self.cycle.len();
        StateK::new(
            (0..self.k)
                .map(|i| self.cycle[(start + i) % p].clone())
                .collect(),
        )
        .expect("order >= 2")
    }

    /// Cycle indices holding the maximum value.
    pub fn max_positions(&self) -> Vec<usize> {
        self.cycle
            .iter()
            .enumerate()
            .filter(|(_, v)| **v == self.max)
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum DetectionOutcome {
    Periodic(PeriodCertificate),
    NotClosed { steps: u64 },
}

impl DetectionOutcome {
    pub fn certificate(&self) -> Option<&PeriodCertificate> {
        match self {
            DetectionOutcome::Periodic(c) => Some(c),
            DetectionOutcome::NotClosed { .. } => None,
        }
    }

    pub fn into_certificate(self) -> Option<PeriodCertificate> {
        match self {
            DetectionOutcome::Periodic(c) => Some(c),
            DetectionOutcome::NotClosed { .. } => None,
        }
    }

    pub fn period(&self) -> Option<u64> {
        self.certificate().map(|c| c.period)
    }
}

/// Iterates `s` forward for at most `cap` steps (treated as at least 1).
pub fn detect_period(s: &StateK, cap: u64) -> DetectionOutcome {
    let cap = cap.max(1);
    match closed_orbit(s, cap) {
        Some(orbit) => {
            let max = orbit.cycle[orbit.max_index].clone();
            DetectionOutcome::Periodic(PeriodCertificate {
                k: s.order(),
                initial: s.clone(),
                period: orbit.period,
                cycle: orbit.cycle,
                max,
                rotation: orbit.rotation,
            })
        }
        None => DetectionOutcome::NotClosed { steps: cap },
    }
}

/// The first certificate invariant that fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateViolation {
    #[error("order {0} is below 2 or differs from the initial state")]
    Order(usize),
    #[error("cycle length {len} does not match period {period}")]
    Length { len: usize, period: u64 },
    #[error("initial state entry {0} disagrees with the cycle")]
    InitialMismatch(usize),
    #[error("re-simulation disagrees at cycle index {0}")]
    Resimulation(usize),
    #[error("sequence already repeats with period {0}")]
    NotMinimal(u64),
    #[error("recorded max is not the cycle maximum")]
    Max,
    #[error("cycle maximum is 0 but the cycle is not identically 0")]
    ZeroCycle,
    #[error("sign structure fails at the maximum at cycle index {0}")]
    SignStructure(usize),
    #[error("rotation index {0} is not the least rotation")]
    Rotation(usize),
}

fn proper_divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            if d < n {
                out.push(d);
            }
            let e = n / d;
            if e != d && e < n {
                out.push(e);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Re-checks every invariant of `c` from scratch.
pub fn verify_certificate(c: &PeriodCertificate) -> Result<(), CertificateViolation> {
    let k = c.k;
    if k < 2 || c.initial.order() != k {
        return Err(CertificateViolation::Order(k));
    }
    let p = c.cycle.len();
    if p == 0 || p as u64 != c.period {
        return Err(CertificateViolation::Length {
            len: p,
            period: c.period,
        });
    }
    let at = |i: usize| &c.cycle[i % p];
    for (i, v) in c.initial.entries().iter().enumerate() {
        if v != at(i) {
            return Err(CertificateViolation::InitialMismatch(i));
        }
    }
    for i in 0..p {
        let expected = max_with_zero((1..k).map(|j| at(i + j))) - at(i);
        if &expected != at(i + k) {
            return Err(CertificateViolation::Resimulation((i + k) % p));
        }
    }
    for d in proper_divisors(c.period) {
        if (0..p).all(|i| at(i) == at(i + d as usize)) {
            return Err(CertificateViolation::NotMinimal(d));
        }
    }
    let true_max = c.cycle.iter().max().expect("nonempty cycle");
    if true_max != &c.max {
        return Err(CertificateViolation::Max);
    }
    if c.max.is_zero() {
        if c.cycle.iter().any(|v| !v.is_zero()) {
            return Err(CertificateViolation::ZeroCycle);
        }
    } else if c.max.is_negative() {
        return Err(CertificateViolation::Max);
    } else {
        for j in c.max_positions() {
            let window_ok = (0..k).all(|i| !at(j + i).is_negative());
            if !window_ok || at(j + k).is_positive() {
                return Err(CertificateViolation::SignStructure(j));
            }
        }
    }
    if c.rotation >= p || least_rotation(&c.cycle) != c.rotation {
        return Err(CertificateViolation::Rotation(c.rotation));
    }
    Ok(())
}

/// For an order-4 period-8 cycle, finds `(x, a)` with `x > 0`, `0 <= a <= x`
/// such that a rotation of the cycle reads `x, 0, x, a, 0, x, 0, x - a`.
///
/// A cycle can fit the template at two rotations; the smaller `a` is returned.
pub fn match_eight_template(c: &PeriodCertificate) -> Option<(Rational, Rational)> {
    if c.k != 4 || c.period != 8 || c.cycle.len() != 8 {
        return None;
    }
    let zero = Rational::zero();
    let mut best: Option<(Rational, Rational)> = None;
    for r in 0..8 {
        let w = c.rotated(r);
        let x = &w[0];
        let a = &w[3];
        let fits = x.is_positive()
            && !a.is_negative()
            && a <= x
            && w[1] == zero
            && &w[2] == x
            && w[4] == zero
            && &w[5] == x
            && w[6] == zero
            && w[7] == x - a;
        if fits && best.as_ref().is_none_or(|(_, b)| a < b) {
            best = Some((x.clone(), a.clone()));
        }
    }
    best
}

/// For a period-2 cycle alternating `a, 0` with `a > 0`, returns `a`.
pub fn match_two_template(c: &PeriodCertificate) -> Option<Rational> {
    if c.period != 2 || c.cycle.len() != 2 {
        return None;
    }
    let (u, v) = (&c.cycle[0], &c.cycle[1]);
    match (u.is_zero(), v.is_zero()) {
        (true, false) if v.is_positive() => Some(v.clone()),
        (false, true) if u.is_positive() => Some(u.clone()),
        _ => None,
    }
}
