mod common;

use common::*;
use maxcycle_core::{
    detect_period, match_eight_template, match_two_template, perset, shift_equivalent,
    verify_certificate, Rational, StateK, DEFAULT_CAP,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn step_and_step_back_are_inverse(s in (2usize..8).prop_flat_map(|k| state_strategy(k, 50, 9))) {
        prop_assert_eq!(s.step().step_back(), s.clone());
        prop_assert_eq!(s.step_back().step(), s.clone());
        prop_assert_eq!(from_big(&naive_step(&big(&s))), s.step());
    }

    #[test]
    fn scaling_composes(s in state_strategy(4, 30, 8), a in positive_rational(9, 7), b in positive_rational(9, 7)) {
        let twice = s.scale(&a).unwrap().scale(&b).unwrap();
        prop_assert_eq!(twice, s.scale(&(&a * &b)).unwrap());
    }

    #[test]
    fn orbit_stays_in_initial_lattice(s in state_strategy(4, 12, 6), n in 0usize..300) {
        let lcm = maxcycle_core::rational::common_denominator(s.entries());
        for v in s.segment(n).values {
            prop_assert!((&lcm % v.denom()) == num_bigint::BigInt::from(0));
        }
    }

    #[test]
    fn segment_matches_iteration(s in state_strategy(5, 12, 6), n in 0usize..200) {
        let seg = s.segment(n);
        prop_assert!(seg.is_consistent());
        prop_assert_eq!(seg.end(), s.iterate(n as u64));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn detector_agrees_with_naive_first_return(s in state_strategy(4, 6, 4)) {
        let naive = naive_period(&big(&s), 2000);
        let found = detect_period(&s, DEFAULT_CAP).period();
        match naive {
            Some(p) => prop_assert_eq!(found, Some(p as u64)),
            None => prop_assert!(found.is_none_or(|p| p > 2000)),
        }
    }

    #[test]
    fn certificates_verify_and_have_sign_structure(s in state_strategy(4, 10, 6)) {
        let c = detect_period(&s, DEFAULT_CAP).into_certificate().expect("closed");
        prop_assert_eq!(verify_certificate(&c), Ok(()));
        prop_assert!(!c.max.is_negative());
        if c.max.is_positive() {
            for j in c.max_positions() {
                let w = c.window_at(j);
                prop_assert!(w.is_nonnegative());
                prop_assert!(!w.step().x(4).is_positive());
            }
        } else {
            prop_assert!(c.cycle.iter().all(Rational::is_zero));
        }
        let json = serde_json::to_string(&c).unwrap();
        let back: maxcycle_core::PeriodCertificate = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(&back, &c);
    }

    #[test]
    fn period_is_scale_invariant(s in state_strategy(4, 10, 6), a in positive_rational(13, 11)) {
        let p = detect_period(&s, DEFAULT_CAP).period();
        prop_assert_eq!(detect_period(&s.scale(&a).unwrap(), DEFAULT_CAP).period(), p);
    }

    #[test]
    fn backward_orbit_has_same_period(s in state_strategy(4, 10, 6), n in 1u64..50) {
        let p = detect_period(&s, DEFAULT_CAP).period();
        prop_assert_eq!(detect_period(&s.iterate_back(n), DEFAULT_CAP).period(), p);
        prop_assert_eq!(detect_period(&s.iterate(n), DEFAULT_CAP).period(), p);
    }

    #[test]
    fn order_four_periods_are_in_the_period_set(s in state_strategy(4, 12, 12)) {
        let p = detect_period(&s, DEFAULT_CAP).period().expect("closed");
        prop_assert!(perset::is_period(p), "period {} of ({})", p, s);
    }

    #[test]
    fn iterates_are_shift_equivalent(s in state_strategy(4, 6, 4), n in 0u64..100) {
        prop_assert_eq!(shift_equivalent(&s, &s.iterate(n), DEFAULT_CAP), Ok(true));
        prop_assert_eq!(shift_equivalent(&s, &s.iterate_back(n), DEFAULT_CAP), Ok(true));
    }
}

#[test]
fn first_return_is_exhaustively_minimal() {
    for text in [
        "8,2,1,5",
        "2,1/2,0,1",
        "3/2,1/2,0,1",
        "5,1,3,0",
        "1,0,1,1/3",
        "10,5,0,1",
    ] {
        let s: StateK = text.parse().unwrap();
        let c = detect_period(&s, DEFAULT_CAP).into_certificate().unwrap();
        let w = big(&s);
        let mut cur = naive_step(&w);
        for q in 1..c.period {
            assert_ne!(cur, w, "{text} returned early at {q}");
            cur = naive_step(&cur);
        }
        assert_eq!(cur, w);
    }
}

#[test]
fn reference_periods() {
    for (text, p) in [
        ("8,2,1,5", 43),
        ("0,0,0,0", 1),
        ("4,3,2,1", 11),
        ("1,0,1,1/3", 8),
        ("2,1/2,0,1", 43),
        ("2,3/2,0,1", 43),
        ("3,2,0,1", 54),
        ("10,5,0,1", 131),
        ("5,1,3,0", 97),
        ("4,1,3,0", 43),
        ("3/2,1/2,0,1", 75),
        ("1,1,0,1", 8),
        ("3,0,3,3/2", 8),
    ] {
        let s: StateK = text.parse().unwrap();
        assert_eq!(detect_period(&s, DEFAULT_CAP).period(), Some(p), "{text}");
        assert_eq!(naive_period(&big(&s), 1000), Some(p as usize), "{text}");
    }
}

#[test]
fn every_eight_cycle_fits_the_template() {
    // all order-4 windows with entries in {0, 1/2, 1, 3/2, 2}
    let vals: Vec<Rational> = (0..5).map(|i| rat(i, 2)).collect();
    let mut eights = 0;
    for a in &vals {
        for b in &vals {
            for c in &vals {
                for d in &vals {
                    let s = StateK::new(vec![a.clone(), b.clone(), c.clone(), d.clone()]).unwrap();
                    let cert = detect_period(&s, DEFAULT_CAP).into_certificate().unwrap();
                    let m = match_eight_template(&cert);
                    assert_eq!(m.is_some(), cert.period == 8, "({s})");
                    if let Some((x, alpha)) = m {
                        eights += 1;
                        assert!(x.is_positive() && !alpha.is_negative() && alpha <= x);
                    }
                }
            }
        }
    }
    assert!(eights > 0);
}

#[test]
fn two_cycles_need_odd_order() {
    for k in 2..9usize {
        let mut v = vec![Rational::one(); k];
        for (i, e) in v.iter_mut().enumerate() {
            if i % 2 == 1 {
                *e = Rational::from(0);
            }
        }
        let s = StateK::new(v).unwrap();
        let c = detect_period(&s, DEFAULT_CAP).into_certificate().unwrap();
        assert_eq!(c.period == 2, k % 2 == 1, "k={k}");
        assert_eq!(match_two_template(&c).is_some(), k % 2 == 1, "k={k}");
    }
}

#[test]
fn scaled_eight_template_keeps_period() {
    let s: StateK = "1,0,1,1/2".parse().unwrap();
    let scaled = s.scale(&Rational::from(3)).unwrap();
    assert_eq!(scaled.to_string(), "3,0,3,3/2");
    assert_eq!(detect_period(&scaled, 100).period(), Some(8));
}
