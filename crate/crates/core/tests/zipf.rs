mod common;

use common::toy_enumerated_probabilities;
use gzl_core::zipfstats::{bounds_check, fit_power_law, ideal_probability, ideal_state_count, FitOptions, RankCurve};
use gzl_core::ExactProbability;
use proptest::prelude::*;

proptest! {
    #[test]
    fn exact_power_laws_are_recovered(alpha in 0.3f64..3.0, c in 1.0f64..1e6, len in 50u64..3000) {
        let freqs: Vec<f64> = (1..=len).map(|n| c * (n as f64).powf(-alpha)).collect();
        let curve = RankCurve::from_frequencies(freqs).unwrap();
        let fit = fit_power_law(&curve, 1, len, FitOptions::default()).unwrap();
        prop_assert!((fit.alpha - alpha).abs() < 1e-9, "{} vs {}", fit.alpha, alpha);
        prop_assert!((fit.log_intercept - c.ln()).abs() < 1e-8);
        prop_assert!(fit.r_squared > 1.0 - 1e-12);
        prop_assert!((fit.predict(7) / curve.at(7) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn bounds_hold_exactly(b in 2u32..7, k in 1u32..7) {
        let r = bounds_check::<ExactProbability>(b, k).unwrap();
        prop_assert!(r.ok(), "{:?}", r.violations);
        prop_assert_eq!(r.ranks, ideal_state_count(b, k).unwrap());
        prop_assert!(r.min_upper_slack > 0.0);
    }
}

#[test]
fn ideal_probabilities_match_enumeration() {
    for b in 2..=4u32 {
        for k in 1..=5u32 {
            let mut probs: Vec<f64> = toy_enumerated_probabilities(b, k).into_values().collect();
            probs.sort_by(|x, y| y.partial_cmp(x).unwrap());
            assert_eq!(probs.len() as u128, ideal_state_count(b, k).unwrap());
            for (n, p) in probs.iter().enumerate() {
                let exact: ExactProbability = ideal_probability(n as u128, b, k).unwrap();
                let f = *exact.numer() as f64 / *exact.denom() as f64;
                assert!((f - p).abs() < 1e-15, "b={b} K={k} n={n}");
            }
        }
    }
}

#[test]
fn fits_in_single_precision() {
    let freqs: Vec<f32> = (1..=1000).map(|n| 1e4 * (n as f32).powf(-1.3)).collect();
    let fit = fit_power_law(&RankCurve::from_frequencies(freqs).unwrap(), 1, 1000, FitOptions::default()).unwrap();
    assert!((fit.alpha - 1.3).abs() < 1e-3);
}
