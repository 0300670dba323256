//! Seeded period surveys for general order `k`.

use std::collections::BTreeMap;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::detector::{detect_period, verify_certificate, DEFAULT_CAP};
use crate::orbit::StateK;
use crate::perset;
use crate::rational::Rational;

pub const DEFAULT_SEED: u64 = 20_200_601;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ConjectureWitness {
    Special { value: u64 },
    Pair { a: u64, b: u64 },
}

/// Whether `n` fits the conjectured period shape for order `k`: one of
/// `1, (3 - (-1)^k) / 2, 2k, 3k - 1`, or `(3k - 2) a + (3k - 1) b` with
/// `a, b >= 1` and `gcd(a, b) = 1`.
pub fn conjecture_member(k: u64, n: u64) -> Option<ConjectureWitness> {
    let parity = if k.is_multiple_of(2) { 1 } else { 2 };
    if [1, parity, 2 * k, 3 * k - 1].contains(&n) {
        return Some(ConjectureWitness::Special { value: n });
    }
    let (u, v) = (3 * k - 2, 3 * k - 1);
    let mut a = 1;
    while a * u + v <= n {
        let rest = n - a * u;
        if rest.is_multiple_of(v) {
            let b = rest / v;
            if a.gcd(&b) == 1 {
                return Some(ConjectureWitness::Pair { a, b });
            }
        }
        a += 1;
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyConfig {
    pub k: usize,
    pub samples: usize,
    /// Numerators are drawn uniformly from `0..=numerator_bound`.
    pub numerator_bound: u64,
    pub denominator: u64,
    pub seed: u64,
    pub cap: u64,
}

impl SurveyConfig {
    pub fn new(k: usize, samples: usize, seed: u64) -> Self {
        SurveyConfig {
            k,
            samples,
            numerator_bound: 12,
            denominator: 12,
            seed,
            cap: DEFAULT_CAP,
        }
    }

    /// The sampled states, in order.
    pub fn states(&self) -> Vec<StateK> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let den = self.denominator.max(1) as i64;
        (0..self.samples)
            .map(|_| {
                let entries = (0..self.k)
                    .map(|_| Rational::ratio(rng.gen_range(0..=self.numerator_bound) as i64, den))
                    .collect();
                StateK::new(entries).expect("order >= 2")
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub state: StateK,
    pub period: Option<u64>,
    pub conjecture_ok: Option<bool>,
    pub certificate_ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodSummary {
    pub count: u64,
    pub conjecture_ok: bool,
    pub witness: Option<ConjectureWitness>,
    /// Order-4 surveys also check the exact period set.
    pub exact_set_ok: Option<bool>,
    pub exemplar: StateK,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub config: SurveyConfig,
    pub histogram: BTreeMap<u64, PeriodSummary>,
    pub not_closed: u64,
    /// Periods that fail the conjectured shape.
    pub violations: Vec<u64>,
    /// Periods outside the exact set (order 4 only).
    pub exact_set_violations: Vec<u64>,
    /// Samples whose certificate failed re-verification.
    pub unverified: u64,
    pub samples: Vec<SampleRecord>,
}

pub fn run_survey(cfg: &SurveyConfig) -> SurveyReport {
    let k = cfg.k as u64;
    let samples: Vec<SampleRecord> = cfg
        .states()
        .into_par_iter()
        .map(|state| {
            let outcome = detect_period(&state, cfg.cap);
            let (period, certificate_ok) = match outcome.certificate() {
                Some(c) => (Some(c.period), Some(verify_certificate(c).is_ok())),
                None => (None, None),
            };
            SampleRecord {
                conjecture_ok: period.map(|p| conjecture_member(k, p).is_some()),
                state,
                period,
                certificate_ok,
            }
        })
        .collect();

    let mut histogram: BTreeMap<u64, PeriodSummary> = BTreeMap::new();
    let mut not_closed = 0;
    let mut unverified = 0;
    for rec in &samples {
        if rec.certificate_ok == Some(false) {
            unverified += 1;
        }
        let Some(p) = rec.period else {
            not_closed += 1;
            continue;
        };
        histogram
            .entry(p)
            .or_insert_with(|| {
                let witness = conjecture_member(k, p);
                PeriodSummary {
                    count: 0,
                    conjecture_ok: witness.is_some(),
                    witness,
                    exact_set_ok: (k == 4).then(|| perset::is_period(p)),
                    exemplar: rec.state.clone(),
                }
            })
            .count += 1;
    }
    let violations = histogram
        .iter()
        .filter(|(_, s)| !s.conjecture_ok)
        .map(|(&p, _)| p)
        .collect();
    let exact_set_violations = histogram
        .iter()
        .filter(|(_, s)| s.exact_set_ok == Some(false))
        .map(|(&p, _)| p)
        .collect();
    SurveyReport {
        config: *cfg,
        histogram,
        not_closed,
        violations,
        exact_set_violations,
        unverified,
        samples,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GolombReport {
    pub k: usize,
    pub trials: usize,
    /// Detected period -> number of tuples.
    pub periods: BTreeMap<u64, u64>,
    pub ok: bool,
}

/// Runs `trials` random monotone tuples of order `k`, alternating between
/// nonincreasing and nondecreasing, plus the zero tuple.
pub fn golomb_survey(k: usize, trials: usize, seed: u64) -> GolombReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tuples = vec![StateK::zero(k)];
    for t in 0..trials {
        let den = rng.gen_range(1..=12i64);
        let mut values: Vec<Rational> = (0..k)
            .map(|_| Rational::ratio(rng.gen_range(0..=24), den))
            .collect();
        values.sort();
        if t % 2 == 0 {
            values.reverse();
        }
        if values.iter().all(Rational::is_zero) {
            values[0] = Rational::one();
            if t % 2 == 1 {
                values.reverse();
            }
        }
        tuples.push(StateK::new(values).expect("order >= 2"));
    }
    let expected = 3 * k as u64 - 1;
    let mut periods = BTreeMap::new();
    let mut ok = true;
    for s in &tuples {
        let p = detect_period(s, 10 * expected).period();
        let zero = s.entries().iter().all(Rational::is_zero);
        ok &= if zero {
            p == Some(1)
        } else {
            p == Some(expected)
        };
        *periods.entry(p.unwrap_or(0)).or_insert(0) += 1;
    }
    GolombReport {
        k,
        trials,
        periods,
        ok,
    }
}

pub fn golomb_check(k: usize, trials: usize) -> bool {
    golomb_survey(k, trials, DEFAULT_SEED).ok
}
