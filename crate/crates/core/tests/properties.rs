mod common;

use lqhv::behavior::{pr_type_box, uniform_behavior};
use lqhv::document::Document;
use lqhv::lp::{LinearProgram, Status};
use lqhv::nonlocality::analog_bounds;
use lqhv::{
    deterministic_behavior, gamma, mix, ratio, BellFunctional, Behavior, CorrelationFunctional, DeterministicStrategy,
    Entries, Rational, Scenario, SolveMode, Value,
};
use num_traits::Zero;
use proptest::prelude::*;

fn small_scenario() -> impl Strategy<Value = Scenario> {
    (1usize..=3)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(1usize..=2, n), prop::collection::vec(2usize..=3, n)))
        .prop_map(|(n, s, d)| Scenario::new(n, s, d).unwrap())
}

fn functional_on(sc: Scenario) -> impl Strategy<Value = BellFunctional> {
    prop::collection::vec(-6i64..=6, sc.table_len()).prop_map(move |c| {
        BellFunctional::from_entries(sc.clone(), Entries::Exact(c.into_iter().map(|x| ratio(x, 1)).collect())).unwrap()
    })
}

fn exact(v: &Value) -> Rational {
    v.as_exact().cloned().unwrap()
}

/// Weights over the 8 PR-type boxes, 16 deterministic boxes and white noise.
fn nonsignaling_2222() -> impl Strategy<Value = Behavior> {
    prop::collection::vec(0i64..=5, 25).prop_map(|raw| {
        let sc = Scenario::chsh();
        let mut parts: Vec<Behavior> = (0..8).map(|k| pr_type_box(k >> 2 & 1, k >> 1 & 1, k & 1)).collect();
        parts.extend((0..16).map(|w| deterministic_behavior(&sc, &DeterministicStrategy::from_index(&sc, w)).unwrap()));
        parts.push(uniform_behavior(&sc));
        let total: i64 = raw.iter().sum();
        let weights: Vec<Rational> = if total == 0 {
            (0..25).map(|i| ratio((i == 24) as i64, 1)).collect()
        } else {
            raw.iter().map(|&w| ratio(w, total)).collect()
        };
        mix(&parts, &Entries::Exact(weights)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lhv_bounds_match_oracle_and_contain_mixtures(
        (f, picks) in small_scenario().prop_flat_map(|sc| {
            let count = sc.strategy_count().unwrap() as usize;
            (functional_on(sc), prop::collection::vec((0..count, 1i64..=9), 1..4))
        })
    ) {
        let sc = f.scenario().clone();
        let b = f.lhv_bounds().unwrap();
        let oracle = common::brute_lhv(&sc, f.coefficients().as_exact().unwrap());
        prop_assert_eq!((exact(&b.inf), exact(&b.sup)), oracle);
        let parts: Vec<Behavior> = picks
            .iter()
            .map(|&(w, _)| deterministic_behavior(&sc, &DeterministicStrategy::from_index(&sc, w)).unwrap())
            .collect();
        let total: i64 = picks.iter().map(|p| p.1).sum();
        let weights = Entries::Exact(picks.iter().map(|&(_, w)| ratio(w, total)).collect());
        let v = exact(&f.evaluate(&mix(&parts, &weights).unwrap()).unwrap());
        prop_assert!(exact(&b.inf) <= v && v <= exact(&b.sup));
        prop_assert_eq!(exact(&f.evaluate(&deterministic_behavior(&sc, &b.argmax).unwrap()).unwrap()), exact(&b.sup));
    }

    #[test]
    fn scaling_and_negation_act_on_bounds(f in small_scenario().prop_flat_map(functional_on), c in 1i64..=7) {
        let b = f.lhv_bounds().unwrap();
        let scaled = f.scaled(&Value::Exact(ratio(c, 3))).lhv_bounds().unwrap();
        prop_assert_eq!(exact(&scaled.sup), exact(&b.sup) * ratio(c, 3));
        prop_assert_eq!(exact(&scaled.inf), exact(&b.inf) * ratio(c, 3));
        let neg = f.negated().lhv_bounds().unwrap();
        prop_assert_eq!(exact(&neg.sup), -exact(&b.inf));
        prop_assert_eq!(exact(&neg.inf), -exact(&b.sup));
    }

    #[test]
    fn correlation_bound_matches_sign_vertices(
        (settings, alpha) in prop::collection::vec(1usize..=3, 1..=3).prop_flat_map(|s| {
            let tuples: usize = s.iter().product();
            (Just(s), prop::collection::vec((-9i64..=9, 1i64..=5), tuples))
        })
    ) {
        let alpha: Vec<Rational> = alpha.into_iter().map(|(p, q)| ratio(p, q)).collect();
        let sc = Scenario::new(settings.len(), settings.clone(), vec![2; settings.len()]).unwrap();
        let f = CorrelationFunctional::new(sc, Entries::Exact(alpha.clone())).unwrap();
        prop_assert_eq!(exact(&f.bound().unwrap()), common::brute_correlation(&settings, &alpha));
        let lifted = f.lift(None).unwrap().lhv_bounds().unwrap();
        prop_assert_eq!(exact(&lifted.sup), exact(&f.bound().unwrap()));
    }

    #[test]
    fn gamma_is_at_least_one_and_convex(p in nonsignaling_2222(), q in nonsignaling_2222(), l in 0i64..=4) {
        let gp = exact(&gamma(&p, SolveMode::Exact).unwrap().gamma);
        let gq = exact(&gamma(&q, SolveMode::Exact).unwrap().gamma);
        prop_assert!(gp >= ratio(1, 1) && gq >= ratio(1, 1));
        prop_assert!(gp <= ratio(2, 1) && gq <= ratio(2, 1));
        let lam = ratio(l, 4);
        let m = mix(&[p, q], &Entries::Exact(vec![lam.clone(), ratio(1, 1) - &lam])).unwrap();
        let gm = exact(&gamma(&m, SolveMode::Exact).unwrap().gamma);
        prop_assert!(gm <= &lam * gp + (ratio(1, 1) - lam) * gq);
    }

    #[test]
    fn float_and_exact_gamma_agree(p in nonsignaling_2222()) {
        let g = exact(&gamma(&p, SolveMode::Exact).unwrap().gamma);
        let f = gamma(&p.to_float(), SolveMode::float()).unwrap().gamma.to_f64();
        prop_assert!((lqhv::scalar::Scalar::to_f64(&g) - f).abs() <= 1e-9);
    }

    #[test]
    fn behavior_documents_round_trip(p in nonsignaling_2222()) {
        for b in [p.clone(), p.to_float()] {
            match Document::parse(&Document::Behavior(b.clone()).to_json_string()).unwrap() {
                Document::Behavior(back) => prop_assert_eq!(back, b),
                other => prop_assert!(false, "kind {}", other.kind()),
            }
        }
    }

    #[test]
    fn feasible_lps_certify_themselves(
        rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 5), 1..=4),
        x in prop::collection::vec(0i64..=3, 5),
        c in prop::collection::vec(0i64..=5, 5),
    ) {
        // x >= 0 is feasible by construction and c >= 0 keeps the problem bounded.
        let q = |v: &[i64]| v.iter().map(|&a| ratio(a, 1)).collect::<Vec<_>>();
        let rhs: Vec<Rational> = rows.iter().map(|r| ratio(r.iter().zip(&x).map(|(a, b)| a * b).sum(), 1)).collect();
        let lp = LinearProgram::new(q(&c), rows.iter().map(|r| q(r)).collect(), rhs).unwrap();
        let sol = lp.solve().unwrap();
        prop_assert_eq!(sol.status, Status::Optimal);
        prop_assert!(lp.verify(&sol, 0.0).passed());
        let cx: Rational = q(&c).iter().zip(q(&x)).map(|(a, b)| a * b).sum();
        prop_assert!(sol.objective <= cx);
        prop_assert!(sol.objective >= Rational::zero());
    }

    #[test]
    fn analog_interval_contains_lhv_range_and_grows(lo in -5i64..=5, w in 0i64..=5, u1 in 0i64..=8, du in 0i64..=8) {
        let (b_inf, b_sup) = (ratio(lo, 1), ratio(lo + w, 1));
        let u = ratio(4 + u1, 4);
        let a = analog_bounds(b_inf.clone(), b_sup.clone(), u.clone()).unwrap();
        let b = analog_bounds(b_inf.clone(), b_sup.clone(), u + ratio(du, 4)).unwrap();
        prop_assert!(a.lower <= b_inf && b_sup <= a.upper);
        prop_assert!(b.lower <= a.lower && a.upper <= b.upper);
        prop_assert_eq!(&a.upper - &a.lower, (b_sup - b_inf) * ratio(4 + u1, 4));
    }
}
