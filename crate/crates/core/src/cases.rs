//! Case analysis of nonnegative order-4 windows whose first entry is the
//! maximum: classification, closed-form block evolution, the transition
//! diagram and route tracing.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::detector::{detect_period, PeriodCertificate};
use crate::error::CaseError;
use crate::orbit::StateK;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseLabel {
    Monotone,
    C1,
    C2,
    C3,
    C4,
    C5,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 6] = [
        CaseLabel::Monotone,
        CaseLabel::C1,
        CaseLabel::C2,
        CaseLabel::C3,
        CaseLabel::C4,
        CaseLabel::C5,
    ];

    /// Iterations covered by one block of this case.
    pub fn block_len(self) -> u64 {
        match self {
            CaseLabel::C2 => 10,
            _ => 11,
        }
    }

    /// Whether `(x1, x2, x3, x4)` satisfies this case's inequalities.
    pub fn holds(self, x: [&Rational; 4]) -> bool {
        let [x1, x2, x3, x4] = x;
        match self {
            CaseLabel::Monotone => x1 >= x2 && x2 >= x3 && x3 >= x4,
            CaseLabel::C1 => x1 >= x2 && x2 >= x4 && x4 >= x3,
            CaseLabel::C2 => x1 >= x3 && x3 >= x2 && x3 >= x4 && *x3 >= x2 + x4,
            CaseLabel::C3 => x1 >= x3 && x3 >= x2 && x3 >= x4 && *x3 <= x2 + x4,
            CaseLabel::C4 => x1 >= x4 && x4 >= x2 && x2 >= x3,
            CaseLabel::C5 => x1 >= x4 && x4 >= x3 && x3 >= x2,
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseLabel::Monotone => "Monotone",
            CaseLabel::C1 => "C1",
            CaseLabel::C2 => "C2",
            CaseLabel::C3 => "C3",
            CaseLabel::C4 => "C4",
            CaseLabel::C5 => "C5",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub labels: BTreeSet<CaseLabel>,
    pub unambiguous: bool,
}

impl Classification {
    /// The label to report: Monotone when present, otherwise the smallest.
    pub fn primary(&self) -> CaseLabel {
        *self.labels.iter().next().expect("nonempty classification")
    }

    /// The only label, if exactly one matched.
    pub fn single(&self) -> Option<CaseLabel> {
        if self.unambiguous {
            Some(self.primary())
        } else {
            None
        }
    }
}

fn quad(s: &StateK) -> Result<[&Rational; 4], CaseError> {
    match s.entries() {
        [a, b, c, d] => Ok([a, b, c, d]),
        e => Err(CaseError::PreconditionViolated(format!(
            "expected an order-4 state, got order {}",
            e.len()
        ))),
    }
}

pub fn classify(s: &StateK) -> Result<Classification, CaseError> {
    let x = quad(s)?;
    if !s.is_nonnegative() {
        return Err(CaseError::PreconditionViolated(format!(
            "({s}) has a negative entry"
        )));
    }
    if x[1..].iter().any(|v| *v > x[0]) {
        return Err(CaseError::PreconditionViolated(format!(
            "first entry of ({s}) is not the maximum"
        )));
    }
    let labels: BTreeSet<CaseLabel> = CaseLabel::ALL.into_iter().filter(|l| l.holds(x)).collect();
    debug_assert!(!labels.is_empty());
    let unambiguous = labels.len() == 1;
    Ok(Classification {
        labels,
        unambiguous,
    })
}

/// Closed-form image of `s` after one block of case `label`.
pub fn block_evolve(s: &StateK, label: CaseLabel) -> Result<(StateK, u64), CaseError> {
    let x = quad(s)?;
    if label == CaseLabel::Monotone {
        return Err(CaseError::PreconditionViolated(
            "monotone tuples have no block evolution".into(),
        ));
    }
    if !s.is_nonnegative() || x[1..].iter().any(|v| *v > x[0]) || !label.holds(x) {
        return Err(CaseError::LabelMismatch(label.to_string()));
    }
    let [x1, x2, x3, x4] = x;
    let image = match label {
        CaseLabel::C1 => [x1.clone(), x2 + x3 - x4, x3.clone(), x4.clone()],
        CaseLabel::C2 => [x1.clone(), x1 - x3 + x2 + x4, x2.clone(), x3.clone()],
        CaseLabel::C3 => [x1.clone(), x2.clone(), x3.clone(), x2 + x4 - x3],
        CaseLabel::C4 => [x1.clone(), x3.clone(), x4 + x3 - x2, x4.clone()],
        CaseLabel::C5 => [x1.clone(), x2.clone(), x4.clone(), x2 + x4 - x3],
        CaseLabel::Monotone => unreachable!(),
    };
    let state = StateK::new(image.to_vec()).expect("order 4");
    Ok((state, label.block_len()))
}

/// Arrows of the case transition diagram.
pub fn is_diagram_arrow(from: CaseLabel, to: CaseLabel) -> bool {
    use CaseLabel::*;
    matches!(
        (from, to),
        (C1, C1)
            | (C1, C4)
            | (C4, C5)
            | (C5, C2)
            | (C5, C3)
            | (C3, C2)
            | (C3, C3)
            | (C2, C1)
            | (C2, C4)
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceStatus {
    Closed,
    Controversial,
    AmbiguityEncountered,
    CapExhausted,
}

impl fmt::Display for TraceStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub case: CaseLabel,
    pub len: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RouteKind {
    R1,
    R2,
    R3,
    R4,
}

/// One circuit `C4 C5 C3^j C2 C1^i`. `c1_loops` and `c3_loops` count the
/// repetitions beyond the first C1 and C3 blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Route {
    pub kind: RouteKind,
    pub c1_loops: u64,
    pub c3_loops: u64,
}

impl Route {
    pub fn len(&self) -> u64 {
        let base = match self.kind {
            RouteKind::R1 => 43,
            RouteKind::R2 => 32,
            RouteKind::R3 => 54,
            RouteKind::R4 => 43,
        };
        base + 11 * (self.c1_loops + self.c3_loops)
    }

    /// Number of 11-iteration blocks in the route minus one.
    pub fn excess(&self) -> u64 {
        (self.len() - 10) / 11 - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteTrace {
    pub start: StateK,
    pub blocks: Vec<Block>,
    pub status: TraceStatus,
    /// Route decomposition of a closed trace that starts its circuit at C4.
    pub routes: Option<Vec<Route>>,
    #[serde(rename = "A1")]
    pub a1: u64,
    #[serde(rename = "A2")]
    pub a2: u64,
    #[serde(rename = "A3")]
    pub a3: u64,
    #[serde(rename = "A4")]
    pub a4: u64,
    #[serde(rename = "H")]
    pub loops: u64,
    #[serde(rename = "A")]
    pub ten_blocks: u64,
    #[serde(rename = "B")]
    pub eleven_blocks: u64,
    /// `10 A + 11 B`, filled for closed traces.
    pub predicted: Option<u64>,
    /// First return time from the exact detector, if found within budget.
    pub detected: Option<u64>,
}

impl RouteTrace {
    pub fn steps(&self) -> u64 {
        self.blocks.iter().map(|b| b.len).sum()
    }

    /// Consecutive block pairs, wrapping around for closed traces.
    pub fn transitions(&self) -> Vec<(CaseLabel, CaseLabel)> {
        let mut out: Vec<_> = self
            .blocks
            .windows(2)
            .map(|w| (w[0].case, w[1].case))
            .collect();
        if self.status == TraceStatus::Closed && self.blocks.len() > 1 {
            let last = self.blocks[self.blocks.len() - 1].case;
            out.push((last, self.blocks[0].case));
        }
        out
    }

    pub fn route_count(&self) -> Option<u64> {
        self.routes.as_ref().map(|r| r.len() as u64)
    }
}

/// Block budget matching a detector step cap.
pub fn default_max_blocks(cap: u64) -> u64 {
    4 * cap / 10
}

fn decompose_routes(blocks: &[Block]) -> Option<Vec<Route>> {
    let first = blocks.iter().position(|b| b.case == CaseLabel::C4)?;
    let n = blocks.len();
    let cases: Vec<CaseLabel> = (0..n).map(|i| blocks[(first + i) % n].case).collect();
    let mut routes = Vec::new();
    let mut i = 0;
    while i < n {
        let take = |label: CaseLabel, i: &mut usize| -> u64 {
            let mut c = 0;
            while *i < n && cases[*i] == label {
                *i += 1;
                c += 1;
            }
            c
        };
        if take(CaseLabel::C4, &mut i) != 1 || take(CaseLabel::C5, &mut i) != 1 {
            return None;
        }
        let c3 = take(CaseLabel::C3, &mut i);
        if take(CaseLabel::C2, &mut i) != 1 {
            return None;
        }
        let c1 = take(CaseLabel::C1, &mut i);
        let kind = match (c3 > 0, c1 > 0) {
            (false, true) => RouteKind::R1,
            (false, false) => RouteKind::R2,
            (true, true) => RouteKind::R3,
            (true, false) => RouteKind::R4,
        };
        routes.push(Route {
            kind,
            c1_loops: c1.saturating_sub(1),
            c3_loops: c3.saturating_sub(1),
        });
    }
    Some(routes)
}

/// Follows `s` block by block until it closes, meets an ambiguous tuple,
/// closes strictly inside a block, or spends `max_blocks` blocks.
pub fn trace_cycle(s: &StateK, max_blocks: u64) -> Result<RouteTrace, CaseError> {
    let start_class = classify(s)?;
    if !start_class.unambiguous {
        return Err(CaseError::PreconditionViolated(format!(
            "({s}) matches several cases"
        )));
    }
    let step_budget = max_blocks.saturating_mul(11).max(1);
    let detected = detect_period(s, step_budget).period();

    let mut blocks = Vec::new();
    let mut cur = s.clone();
    let mut steps = 0u64;
    let status = loop {
        if blocks.len() as u64 >= max_blocks {
            break TraceStatus::CapExhausted;
        }
        let class = classify(&cur)?;
        let Some(label) = class.single() else {
            break TraceStatus::AmbiguityEncountered;
        };
        let (next, len) = if label == CaseLabel::Monotone {
            (cur.iterate(11), 11)
        } else {
            block_evolve(&cur, label)?
        };
        if let Some(p) = detected {
            if steps < p && p < steps + len {
                break TraceStatus::Controversial;
            }
        }
        steps += len;
        blocks.push(Block { case: label, len });
        if &next == s {
            break TraceStatus::Closed;
        }
        cur = next;
    };

    let ten_blocks = blocks.iter().filter(|b| b.len == 10).count() as u64;
    let eleven_blocks = blocks.len() as u64 - ten_blocks;
    let mut trace = RouteTrace {
        start: s.clone(),
        blocks,
        status,
        routes: None,
        a1: 0,
        a2: 0,
        a3: 0,
        a4: 0,
        loops: 0,
        ten_blocks,
        eleven_blocks,
        predicted: None,
        detected,
    };
    if status == TraceStatus::Closed {
        trace.predicted = Some(10 * ten_blocks + 11 * eleven_blocks);
        if let Some(routes) = decompose_routes(&trace.blocks) {
            for r in &routes {
                match r.kind {
                    RouteKind::R1 => trace.a1 += 1,
                    RouteKind::R2 => trace.a2 += 1,
                    RouteKind::R3 => trace.a3 += 1,
                    RouteKind::R4 => trace.a4 += 1,
                }
                trace.loops += r.c1_loops + r.c3_loops;
            }
            trace.routes = Some(routes);
        }
    }
    Ok(trace)
}

/// Every block boundary classifies into exactly one case and the orbit
/// closes at a block boundary.
pub fn check_condition_u(s: &StateK, max_blocks: u64) -> bool {
    matches!(
        trace_cycle(s, max_blocks),
        Ok(RouteTrace {
            status: TraceStatus::Closed,
            ..
        })
    )
}

/// The order-4 window of the cycle starting at a maximum.
///
/// Maxima are visited in canonical rotation order; the first one whose
/// window is an unambiguous C4 tuple wins, otherwise the first maximum.
pub fn normalize_to_max(c: &PeriodCertificate) -> Result<StateK, CaseError> {
    if c.k != 4 {
        return Err(CaseError::PreconditionViolated(format!(
            "expected an order-4 certificate, got order {}",
            c.k
        )));
    }
    if !c.max.is_positive() {
        return Err(CaseError::Degenerate(
            "the zero cycle has no positive maximum".into(),
        ));
    }
    let p = c.cycle.len();
    let mut positions = c.max_positions();
    positions.sort_by_key(|&i| (i + p - c.rotation) % p);
    let windows: Vec<StateK> = positions.iter().map(|&i| c.window_at(i)).collect();
    let c4 = windows
        .iter()
        .find(|w| classify(w).is_ok_and(|cl| cl.single() == Some(CaseLabel::C4)));
    Ok(c4.unwrap_or(&windows[0]).clone())
}
