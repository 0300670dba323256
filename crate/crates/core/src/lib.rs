//! Exact-arithmetic toolkit for the max-type recurrence
//! `x_{n+k} = max{x_{n+k-1}, ..., x_{n+1}, 0} - x_n`.

pub mod cases;
pub mod detector;
mod engine;
pub mod error;
pub mod explorer;
pub mod orbit;
pub mod perset;
pub mod rational;
pub mod synth;

pub use cases::{
    block_evolve, check_condition_u, classify, is_diagram_arrow, normalize_to_max, trace_cycle,
    CaseLabel, Classification, RouteTrace, TraceStatus,
};
pub use detector::{
    detect_period, match_eight_template, match_two_template, verify_certificate,
    CertificateViolation, DetectionOutcome, PeriodCertificate, DEFAULT_CAP,
};
pub use engine::least_rotation;
pub use error::{CaseError, OrbitError, ParseError, SynthesisError};
pub use explorer::{conjecture_member, golomb_check, run_survey, SurveyConfig, SurveyReport};
pub use orbit::{shift_equivalent, OrbitSegment, StateK};
pub use perset::{admissible_decompositions, contains, gap_scan, periods_in_range, GapReport};
pub use rational::Rational;
pub use synth::{synthesize, ConstructorTag, SynthesisRecipe};
