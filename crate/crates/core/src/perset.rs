//! Membership oracle for the period set of the order-4 recurrence.
//!
//! `N` is a period iff `N` is 1, 8 or 11, or `N = 10a + 11b` with `a >= 1`,
//! `b >= 2a + 1` and `gcd(a, b) = 1`. Membership is decided by scanning
//! every decomposition.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// Periods that have no admissible decomposition.
pub const SPECIAL_PERIODS: [u64; 3] = [1, 8, 11];

/// Primes up to 401 that are periods.
pub const PRIME_PERIODS_TO_401: [u64; 41] = [
    11, 43, 97, 107, 109, 131, 139, 151, 163, 173, 193, 197, 227, 229, 239, 241, 251, 257, 263,
    269, 271, 281, 283, 293, 307, 311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379, 383,
    389, 397, 401,
];

/// Cofactors `q >= 33`, prime to 11, for which `11 q` is still not a period.
pub const ELEVEN_EXCEPTIONS: [u64; 4] = [43, 54, 76, 120];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub a: u64,
    pub b: u64,
    pub value: u64,
    pub admissible: bool,
}

impl Decomposition {
    pub fn new(a: u64, b: u64) -> Self {
        Decomposition {
            a,
            b,
            value: 10 * a + 11 * b,
            admissible: a >= 1 && b > 2 * a && a.gcd(&b) == 1,
        }
    }
}

/// All `(a, b)` with `a, b >= 0` and `10a + 11b = n`, ascending in `a`.
pub fn decompositions(n: u64) -> Vec<Decomposition> {
    (0..=n / 10)
        .filter(|a| (n - 10 * a).is_multiple_of(11))
        .map(|a| Decomposition::new(a, (n - 10 * a) / 11))
        .collect()
}

pub fn admissible_decompositions(n: u64) -> Vec<Decomposition> {
    decompositions(n)
        .into_iter()
        .filter(|d| d.admissible)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Special { value: u64 },
    Pair { a: u64, b: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub n: u64,
    pub member: bool,
    pub witness: Option<Witness>,
}

pub fn contains(n: u64) -> Membership {
    let witness = if SPECIAL_PERIODS.contains(&n) {
        Some(Witness::Special { value: n })
    } else {
        decompositions(n)
            .into_iter()
            .find(|d| d.admissible)
            .map(|d| Witness::Pair { a: d.a, b: d.b })
    };
    Membership {
        n,
        member: witness.is_some(),
        witness,
    }
}

pub fn is_period(n: u64) -> bool {
    contains(n).member
}

pub fn periods_in_range(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(1)..=hi).filter(|&n| is_period(n)).collect()
}

/// The `m` in `1..=10` with `n - 10 m` divisible by 11; `None` for multiples
/// of 11.
pub fn residue_class(n: u64) -> Option<u8> {
    let r = n % 11;
    if r == 0 {
        None
    } else {
        Some((11 - r) as u8)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub limit: u64,
    pub non_members: Vec<u64>,
    /// Largest non-member in each residue class `1..=10`.
    pub class_maxima: BTreeMap<u8, u64>,
    /// Largest non-member divisible by 11.
    pub eleven_max: Option<u64>,
    pub overall_max: Option<u64>,
}

pub fn gap_scan(limit: u64) -> GapReport {
    let non_members: Vec<u64> = (1..=limit).filter(|&n| !is_period(n)).collect();
    let mut class_maxima = BTreeMap::new();
    let mut eleven_max = None;
    for &n in &non_members {
        match residue_class(n) {
            Some(m) => {
                class_maxima.insert(m, n);
            }
            None => eleven_max = Some(n),
        }
    }
    GapReport {
        limit,
        overall_max: non_members.last().copied(),
        non_members,
        class_maxima,
        eleven_max,
    }
}

/// Primes `<= n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrimeViolation {
    /// A prime `>= 281` that is not a period.
    LargePrimeMissing(u64),
    /// A prime `<= 401` whose membership disagrees with the reference list.
    ReferenceMismatch { prime: u64, member: bool },
}

pub fn check_prime_rule(limit: u64) -> Vec<PrimeViolation> {
    let primes = primes_up_to(limit.max(401));
    let mut out = Vec::new();
    for &p in &primes {
        let member = is_period(p);
        if p <= 401 && member != PRIME_PERIODS_TO_401.contains(&p) {
            out.push(PrimeViolation::ReferenceMismatch { prime: p, member });
        }
        if (281..=limit).contains(&p) && !member {
            out.push(PrimeViolation::LargePrimeMissing(p));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ElevenViolation {
    /// `11 q` with `gcd(q, 11) = 1` disagrees with the cofactor rule.
    Cofactor { q: u64, member: bool },
    /// `11^e q` with `e >= 3` is not a period.
    HighPower { exponent: u32, q: u64 },
    /// `121 q` with `q >= 3` is not a period.
    Square { q: u64 },
    /// 121 or 242 is a period.
    SmallSquare(u64),
}

/// Whether the cofactor rule predicts `11 q` to be a period.
pub fn eleven_cofactor_rule(q: u64) -> bool {
    q == 1 || (q >= 33 && !ELEVEN_EXCEPTIONS.contains(&q))
}

const ELEVEN_POWER_BOUND: u64 = 100_000;

pub fn check_eleven_rule(q_limit: u64) -> Vec<ElevenViolation> {
    let mut out = Vec::new();
    for q in (1..=q_limit).filter(|q| q % 11 != 0) {
        let member = is_period(11 * q);
        if member != eleven_cofactor_rule(q) {
            out.push(ElevenViolation::Cofactor { q, member });
        }
    }
    let mut exponent = 3;
    let mut power = 1331u64;
    while power <= ELEVEN_POWER_BOUND {
        for q in (1..=ELEVEN_POWER_BOUND / power).filter(|q| q % 11 != 0) {
            if !is_period(power * q) {
                out.push(ElevenViolation::HighPower { exponent, q });
            }
        }
        exponent += 1;
        power *= 11;
    }
    for q in (3..=ELEVEN_POWER_BOUND / 121).filter(|q| q % 11 != 0) {
        if !is_period(121 * q) {
            out.push(ElevenViolation::Square { q });
        }
    }
    for n in [121, 242] {
        if is_period(n) {
            out.push(ElevenViolation::SmallSquare(n));
        }
    }
    out
}

/// One line of a membership table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: u64,
    pub member: bool,
    pub a: Option<u64>,
    pub b: Option<u64>,
}

pub fn table_rows(lo: u64, hi: u64) -> Vec<TableRow> {
    (lo.max(1)..=hi)
        .map(|n| {
            let m = contains(n);
            let (a, b) = match m.witness {
                Some(Witness::Pair { a, b }) => (Some(a), Some(b)),
                _ => (None, None),
            };
            TableRow {
                n,
                member: m.member,
                a,
                b,
            }
        })
        .collect()
}
