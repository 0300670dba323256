//! Explicit initial conditions with a prescribed period.
//!
//! Every constructor records its parameters, the resulting state and the
//! period its formula predicts, then confirms the prediction by running the
//! exact detector for exactly that many steps.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::detector::detect_period;
use crate::error::SynthesisError;
use crate::orbit::StateK;
use crate::perset::{contains, Witness};
use crate::rational::{common_denominator, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConstructorTag {
    Equilibrium,
    EightTemplate,
    Monotone,
    Controversial1,
    Controversial2,
    GcdRoute,
    TwoCycleOddK,
    TwoKCycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthesisRecipe {
    pub tag: ConstructorTag,
    pub params: BTreeMap<String, Rational>,
    pub state: StateK,
    pub predicted: u64,
    pub verified: bool,
}

impl SynthesisRecipe {
    fn new(
        tag: ConstructorTag,
        params: &[(&str, Rational)],
        state: StateK,
        predicted: u64,
    ) -> Self {
        let verified = detect_period(&state, predicted).period() == Some(predicted);
        SynthesisRecipe {
            tag,
            params: params
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
            state,
            predicted,
            verified,
        }
    }

    pub fn param(&self, name: &str) -> Option<&Rational> {
        self.params.get(name)
    }
}

fn int(n: u64) -> Rational {
    Rational::from_integer(n)
}

fn state(values: Vec<Rational>) -> StateK {
    StateK::new(values).expect("order >= 2")
}

fn violated(msg: impl Into<String>) -> SynthesisError {
    SynthesisError::PreconditionViolated(msg.into())
}

/// An initial state of the order-4 recurrence with minimal period `n`.
pub fn synthesize(n: u64) -> Result<SynthesisRecipe, SynthesisError> {
    match n {
        1 => Ok(SynthesisRecipe::new(
            ConstructorTag::Equilibrium,
            &[],
            StateK::zero(4),
            1,
        )),
        8 => build_eight_template(Rational::one(), Rational::ratio(1, 2)),
        11 => Ok(SynthesisRecipe::new(
            ConstructorTag::Monotone,
            &[("x", Rational::one())],
            StateK::from_ints(&[4, 3, 2, 1]),
            11,
        )),
        _ => match contains(n).witness {
            Some(Witness::Pair { a, b }) => {
                let (p, q) = (b - a, a);
                let mid = Rational::ratio((p + q) as i64, 2);
                let ybar = mid.max(int(q)).min(int(p));
                build_controversial1(p, q, ybar)
            }
            _ => Err(SynthesisError::NotAPeriod(n)),
        },
    }
}

/// `(x, 0, x, a)`: the window of the cycle `x, 0, x, a, 0, x, 0, x - a`.
pub fn build_eight_template(
    x: Rational,
    alpha: Rational,
) -> Result<SynthesisRecipe, SynthesisError> {
    if !x.is_positive() {
        return Err(violated(format!("x = {x} must be positive")));
    }
    if alpha.is_negative() || alpha > x {
        return Err(violated(format!("alpha = {alpha} must lie in [0, x]")));
    }
    let s = state(vec![x.clone(), Rational::zero(), x.clone(), alpha.clone()]);
    Ok(SynthesisRecipe::new(
        ConstructorTag::EightTemplate,
        &[("x", x), ("alpha", alpha)],
        s,
        8,
    ))
}

/// `(p, ybar, 0, q)` with period `11 (p + q) + 10 q`.
pub fn build_controversial1(
    p: u64,
    q: u64,
    ybar: Rational,
) -> Result<SynthesisRecipe, SynthesisError> {
    if q == 0 {
        return Err(violated("q must be positive"));
    }
    if p.gcd(&q) != 1 {
        return Err(violated(format!("gcd({p}, {q}) != 1")));
    }
    // (1, 1, 0, 1) is an 8-cycle, not the 32 the formula gives
    if p == q {
        return Err(violated("p must exceed q"));
    }
    if ybar > int(p) || ybar < int(q) {
        return Err(violated(format!("need {p} >= ybar = {ybar} >= {q}")));
    }
    let s = state(vec![int(p), ybar.clone(), Rational::zero(), int(q)]);
    let predicted = 11 * (p + q) + 10 * q;
    Ok(SynthesisRecipe::new(
        ConstructorTag::Controversial1,
        &[("p", int(p)), ("q", int(q)), ("ybar", ybar)],
        s,
        predicted,
    ))
}

/// `(x, z, y, 0)` with `x >= y > z > 0`.
pub fn build_controversial2(x: u64, z: u64, y: u64) -> Result<SynthesisRecipe, SynthesisError> {
    if y == z {
        return Err(SynthesisError::Degenerate(
            "y = z gives an 11-cycle outside this family".into(),
        ));
    }
    if !(x >= y && y > z && z > 0) {
        return Err(violated(format!(
            "need x >= y > z > 0, got x={x}, y={y}, z={z}"
        )));
    }
    let gap = y - z;
    let d = gap.gcd(&x);
    let p = x / d;
    let q = p - gap / d;
    let predicted = 11 * (2 * p - q) + 10 * (p - q);
    let d_r = int(d);
    let reduce = |v: u64| Rational::new(v, d).expect("d > 0");
    let s = state(vec![int(x), int(z), int(y), Rational::zero()]);
    Ok(SynthesisRecipe::new(
        ConstructorTag::Controversial2,
        &[
            ("x", int(x)),
            ("z", int(z)),
            ("y", int(y)),
            ("d", d_r),
            ("p", int(p)),
            ("q", int(q)),
            ("z_reduced", reduce(z)),
            ("y_reduced", reduce(y)),
        ],
        s,
        predicted,
    ))
}

/// Rational form of [`build_controversial2`]: the parameters are cleared of
/// denominators first, which leaves the period unchanged.
pub fn build_controversial2_rational(
    x: &Rational,
    z: &Rational,
    y: &Rational,
) -> Result<SynthesisRecipe, SynthesisError> {
    let scale = common_denominator([x, z, y]);
    let to_u64 = |v: &Rational| -> Result<u64, SynthesisError> {
        let scaled: BigInt = v.numer() * (&scale / v.denom());
        scaled
            .to_u64()
            .ok_or_else(|| violated(format!("{v} is negative or too large")))
    };
    let base = build_controversial2(to_u64(x)?, to_u64(z)?, to_u64(y)?)?;
    let s = state(vec![x.clone(), z.clone(), y.clone(), Rational::zero()]);
    let mut params: Vec<(String, Rational)> = base.params.into_iter().collect();
    params.push(("scale".into(), Rational::from(scale)));
    let borrowed: Vec<(&str, Rational)> = params
        .iter()
        .map(|(k, v)| (k.as_str(), v.clone()))
        .collect();
    Ok(SynthesisRecipe::new(
        ConstructorTag::Controversial2,
        &borrowed,
        s,
        base.predicted,
    ))
}

/// `(x1, x2, x3, x4)` with `x1 = (q - p) / p * (x4 - x3)`, a C4 tuple whose
/// orbit runs through `p` routes with period `10 p + 11 q`.
pub fn build_gcd_route(
    p: u64,
    q: u64,
    x3: Rational,
    x4: Rational,
    x2: Rational,
) -> Result<SynthesisRecipe, SynthesisError> {
    if p == 0 {
        return Err(violated("p must be positive"));
    }
    if p.gcd(&q) != 1 {
        return Err(violated(format!("gcd({p}, {q}) != 1")));
    }
    if q < 2 * p + 1 {
        return Err(violated(format!("q = {q} < 2p + 1 = {}", 2 * p + 1)));
    }
    if x3.is_negative() {
        return Err(violated(format!("x3 = {x3} < 0")));
    }
    if !(x4 > x2 && x2 > x3) {
        return Err(violated(format!("need x4 > x2 > x3, got {x4}, {x2}, {x3}")));
    }
    let x1 = Rational::ratio((q - p) as i64, p as i64) * (&x4 - &x3);
    if x1 < x4 {
        return Err(violated(format!("x1 = {x1} < x4 = {x4}")));
    }
    let s = state(vec![x1.clone(), x2.clone(), x3.clone(), x4.clone()]);
    Ok(SynthesisRecipe::new(
        ConstructorTag::GcdRoute,
        &[
            ("p", int(p)),
            ("q", int(q)),
            ("x1", x1),
            ("x2", x2),
            ("x3", x3),
            ("x4", x4),
        ],
        s,
        10 * p + 11 * q,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeneralKind {
    /// `(0, x, 0, x, x, ..., x)`, period `2k`.
    TwoKCycle,
    /// `(x, 0, x, 0, ..., x)` for odd `k`, period 2.
    TwoCycleOddK,
    /// `(k, k - 1, ..., 1) x`, period `3k - 1`.
    MonotoneK,
}

pub fn build_general_k(
    kind: GeneralKind,
    k: usize,
    x: Rational,
) -> Result<SynthesisRecipe, SynthesisError> {
    if !x.is_positive() {
        return Err(violated(format!("x = {x} must be positive")));
    }
    let (tag, values, predicted) = match kind {
        GeneralKind::TwoKCycle => {
            if k < 4 {
                return Err(violated(format!("order {k} < 4")));
            }
            let mut v = vec![Rational::zero(), x.clone(), Rational::zero()];
            v.resize(k, x.clone());
            (ConstructorTag::TwoKCycle, v, 2 * k as u64)
        }
        GeneralKind::TwoCycleOddK => {
            if k < 3 || k.is_multiple_of(2) {
                return Err(violated(format!("order {k} is not odd and >= 3")));
            }
            let v = (0..k)
                .map(|i| {
                    if i % 2 == 0 {
                        x.clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            (ConstructorTag::TwoCycleOddK, v, 2)
        }
        GeneralKind::MonotoneK => {
            if k < 2 {
                return Err(violated(format!("order {k} < 2")));
            }
            let v = (1..=k as u64).rev().map(|i| int(i) * &x).collect();
            (ConstructorTag::Monotone, v, 3 * k as u64 - 1)
        }
    };
    Ok(SynthesisRecipe::new(
        tag,
        &[("k", int(k as u64)), ("x", x)],
        state(values),
        predicted,
    ))
}
