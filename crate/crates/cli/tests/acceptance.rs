//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use maxcycle_core::cases::TraceStatus;
use maxcycle_core::explorer::SurveyConfig;
use maxcycle_core::perset::{self, check_eleven_rule, check_prime_rule};
use maxcycle_core::synth::build_gcd_route;
use maxcycle_core::{
    detect_period, match_eight_template, run_survey, synthesize, trace_cycle, verify_certificate,
    Rational, StateK, DEFAULT_CAP,
};
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_200_601;

fn maxcycle(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_maxcycle"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "maxcycle {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

/// Value of `key=` in `key=value` output lines.
fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines()
        .find_map(|l| l.strip_prefix(key)?.strip_prefix('='))
}

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        detail: detail.into(),
    }
}

fn range_members(lo: u64, hi: u64) -> BTreeSet<u64> {
    maxcycle(&["perset", "range", &lo.to_string(), &hi.to_string()])
        .trim()
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().unwrap())
        .collect()
}

fn period_table() -> Verdict {
    let row1: BTreeSet<u64> = [1, 8, 11, 43, 54, 65, 75, 76, 87, 97, 98].into();
    let row2: BTreeSet<u64> = [
        107, 109, 118, 119, 120, 131, 139, 140, 141, 142, 151, 153, 161, 163, 164, 171, 173, 175,
        182, 183, 184, 185, 186, 193, 197,
    ]
    .into();
    let row5_excluded = [
        408, 410, 412, 414, 416, 420, 423, 426, 430, 432, 434, 435, 436, 452, 453, 454, 455, 456,
        458, 473, 474, 476, 478, 480, 485, 486, 490, 492, 496, 498, 500,
    ];
    let row5: BTreeSet<u64> = (401..=500).filter(|n| !row5_excluded.contains(n)).collect();
    let mut bad = Vec::new();
    for (lo, hi, expected) in [(1, 100, row1), (101, 200, row2), (401, 500, row5)] {
        let got = range_members(lo, hi);
        if got != expected {
            let missing: Vec<_> = expected.difference(&got).collect();
            let extra: Vec<_> = got.difference(&expected).collect();
            bad.push(format!("[{lo},{hi}] missing {missing:?} extra {extra:?}"));
        }
    }
    verdict(
        bad.is_empty(),
        if bad.is_empty() {
            "3 rows exact".into()
        } else {
            bad.join("; ")
        },
    )
}

fn extremal_gap() -> Verdict {
    let out = maxcycle(&["perset", "gaps", "--limit", "4000"]);
    let expected = [
        ("max_nonperiod", "1674"),
        ("N1", "32"),
        ("N2", "1560"),
        ("N3", "1350"),
        ("N4", "1140"),
        ("N5", "1260"),
        ("N6", "918"),
        ("N7", "840"),
        ("N8", "1026"),
        ("N9", "1674"),
        ("N10", "1332"),
        ("N11", "1320"),
    ];
    let bad: Vec<String> = expected
        .iter()
        .filter(|(k, v)| field(&out, k) != Some(v))
        .map(|(k, v)| format!("{k}={:?} want {v}", field(&out, k)))
        .collect();
    verdict(
        bad.is_empty(),
        if bad.is_empty() {
            "max 1674".into()
        } else {
            bad.join(", ")
        },
    )
}

fn exact_dynamics() -> Verdict {
    let cases = [
        ("8,2,1,5", "43"),
        ("0,0,0,0", "1"),
        ("4,3,2,1", "11"),
        ("1,0,1,1/3", "8"),
    ];
    let bad: Vec<String> = cases
        .iter()
        .filter_map(|(s, want)| {
            let out = maxcycle(&["period", s]);
            let got = field(&out, "period");
            (got != Some(want)).then(|| format!("{s}: {got:?} want {want}"))
        })
        .collect();
    verdict(
        bad.is_empty(),
        if bad.is_empty() {
            "4 states".into()
        } else {
            bad.join(", ")
        },
    )
}

fn synthesis_round_trip() -> Verdict {
    let targets = perset::periods_in_range(12, 1000);
    let bad: Vec<u64> = targets
        .iter()
        .copied()
        .filter(|&n| match synthesize(n) {
            Ok(r) => detect_period(&r.state, DEFAULT_CAP).period() != Some(n),
            Err(_) => true,
        })
        .collect();
    verdict(
        bad.is_empty(),
        format!("{} periods, failures {bad:?}", targets.len()),
    )
}

fn route_prediction() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut failures = Vec::new();
    let mut done = 0;
    while done < 1000 {
        let p = rng.gen_range(1..=20u64);
        let q = rng.gen_range(2 * p + 1..=2 * p + 61);
        if p.gcd(&q) != 1 {
            continue;
        }
        let width = rat(rng.gen_range(1..=5), rng.gen_range(1..=3));
        let slack = &width * &rat((q - 2 * p) as i64, p as i64);
        let x3 = &slack * &rat(rng.gen_range(0..7), 7);
        let x4 = &x3 + &width;
        let x2 = &x3 + &(&width * &rat(rng.gen_range(1..10_007), 10_007));
        done += 1;
        let recipe = match build_gcd_route(p, q, x3, x4, x2) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("p={p} q={q}: {e}"));
                continue;
            }
        };
        let want = 10 * p + 11 * q;
        let detected = detect_period(&recipe.state, DEFAULT_CAP).period();
        let trace = trace_cycle(&recipe.state, 10 * want).expect("nonnegative start");
        let routes = trace.routes.as_ref().map(Vec::len);
        if trace.status != TraceStatus::Closed
            || trace.predicted != Some(want)
            || detected != Some(want)
            || routes != Some(p as usize)
        {
            failures.push(format!(
                "{}: predicted {:?} detected {detected:?} routes {routes:?} want {want} in {p}",
                recipe.state, trace.predicted
            ));
        }
    }
    verdict(
        failures.is_empty(),
        format!(
            "1000 cases, {} failures {}",
            failures.len(),
            failures.first().map_or("", String::as_str)
        ),
    )
}

fn prime_and_eleven_rules() -> Verdict {
    let primes = check_prime_rule(2000);
    let eleven = check_eleven_rule(200);
    let ok = primes.is_empty() && eleven.is_empty();
    verdict(
        ok,
        format!("prime violations {primes:?}, eleven violations {eleven:?}"),
    )
}

fn random_state(rng: &mut ChaCha8Rng, k: usize) -> StateK {
    let den = rng.gen_range(1..=12);
    let entries = (0..k).map(|_| rat(rng.gen_range(-12..=12), den)).collect();
    StateK::new(entries).unwrap()
}

fn property_suites() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let mut bad = Vec::new();

    let inverse_fails = (0..10_000)
        .filter(|_| {
            let k = rng.gen_range(2..=8);
            let s = random_state(&mut rng, k);
            s.step().step_back() != s || s.step_back().step() != s
        })
        .count();
    if inverse_fails > 0 {
        bad.push(format!("{inverse_fails} inverse failures"));
    }

    let mut scale_fails = 0;
    for _ in 0..1000 {
        let s = random_state(&mut rng, 4);
        let alpha = rat(rng.gen_range(1..=60), rng.gen_range(1..=17));
        let base = detect_period(&s, DEFAULT_CAP).period();
        if base.is_none() || detect_period(&s.scale(&alpha).unwrap(), DEFAULT_CAP).period() != base
        {
            scale_fails += 1;
        }
    }
    if scale_fails > 0 {
        bad.push(format!("{scale_fails} scaling failures"));
    }

    let (mut eights, mut template_fails, mut oracle_fails, mut cert_fails) = (0, 0, 0, 0);
    for i in 0..1000 {
        let s = if i % 4 == 0 {
            // Half-integer windows around the period-8 family
            let e = (0..4).map(|_| rat(rng.gen_range(0..=4), 2)).collect();
            StateK::new(e).unwrap()
        } else {
            random_state(&mut rng, 4)
        };
        let Some(cert) = detect_period(&s, DEFAULT_CAP).into_certificate() else {
            oracle_fails += 1;
            continue;
        };
        if verify_certificate(&cert).is_err() {
            cert_fails += 1;
        }
        if !perset::is_period(cert.period) {
            oracle_fails += 1;
        }
        if cert.period == 8 {
            eights += 1;
            if match_eight_template(&cert).is_none() {
                template_fails += 1;
            }
        }
    }
    if oracle_fails + template_fails + cert_fails > 0 || eights == 0 {
        bad.push(format!(
            "oracle {oracle_fails}, template {template_fails}/{eights}, certificate {cert_fails}"
        ));
    }
    verdict(
        bad.is_empty(),
        if bad.is_empty() {
            format!("0 counterexamples, {eights} period-8 orbits")
        } else {
            bad.join(", ")
        },
    )
}

fn conjecture_survey() -> Verdict {
    let mut notes = Vec::new();
    let mut ok = true;
    for k in [5usize, 6] {
        let cfg = SurveyConfig {
            k,
            samples: 500,
            numerator_bound: 12,
            denominator: 12,
            seed: SEED,
            cap: DEFAULT_CAP,
        };
        let r = run_survey(&cfg);
        ok &= r.violations.is_empty() && r.unverified == 0;
        let hits: u64 = r.violations.iter().map(|p| r.histogram[p].count).sum();
        notes.push(format!(
            "k={k}: not_closed={} violating periods {:?} ({hits} samples)",
            r.not_closed, r.violations
        ));
    }
    verdict(ok, notes.join("; "))
}

type Criterion = (&'static str, fn() -> Verdict, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 period table", period_table, Duration::from_secs(1)),
        ("2 extremal gap", extremal_gap, Duration::from_secs(5)),
        ("3 exact dynamics", exact_dynamics, Duration::from_secs(1)),
        (
            "4 synthesis round trip",
            synthesis_round_trip,
            Duration::from_secs(60),
        ),
        (
            "5 route prediction",
            route_prediction,
            Duration::from_secs(120),
        ),
        (
            "6 prime and eleven rules",
            prime_and_eleven_rules,
            Duration::from_secs(60),
        ),
        (
            "7 property suites",
            property_suites,
            Duration::from_secs(120),
        ),
        (
            "8 conjecture survey",
            conjecture_survey,
            Duration::from_secs(300),
        ),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let v = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let pass = v.ok && in_time;
        if !pass {
            failed += 1;
        }
        let timing = if in_time {
            String::new()
        } else {
            format!(" over time limit {limit:?}")
        };
        println!(
            "{} criterion {name}: {} ({:.2?}{timing})",
            if pass { "PASS" } else { "FAIL" },
            v.detail,
            elapsed
        );
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
