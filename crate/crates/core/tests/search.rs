mod common;

use common::{random_c4_position, seeded};
use gzl_core::search::{mcts_search, temperature_policy, RolloutEvaluator, SolverEvaluator};
use gzl_core::solver::{Solver, SolverConfig};
use gzl_core::{Action, GameState, SearchConfig};
use proptest::prelude::*;

proptest! {
    #[test]
    fn temperature_policy_is_a_distribution(
        counts in prop::collection::vec(0u64..10_000, 1..12),
        t in prop_oneof![Just(0.0), 1e-4f64..100.0],
    ) {
        prop_assume!(counts.iter().any(|&c| c > 0));
        let actions: Vec<Action> = (0..counts.len() as u16).map(Action).collect();
        let p = temperature_policy(&actions, &counts, t).unwrap();
        prop_assert!((p.probs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        for i in 0..counts.len() {
            prop_assert!(p.probs[i] >= 0.0);
            if counts[i] == 0 {
                prop_assert_eq!(p.probs[i], 0.0);
            }
            for j in 0..counts.len() {
                if counts[i] > counts[j] {
                    prop_assert!(p.probs[i] >= p.probs[j]);
                }
            }
        }
    }
}

#[test]
fn root_visits_equal_simulations() {
    let s = GameState::connect_four(7, 6).unwrap();
    let cfg = SearchConfig { simulations: 123, ..SearchConfig::default() };
    let tree = mcts_search(&s, &RolloutEvaluator::new(1), &cfg, &mut seeded(1)).unwrap();
    assert_eq!(tree.root().total_visits(), 123);
    assert_eq!(tree.root().actions().len(), 7);
}

#[test]
fn search_takes_an_immediate_win() {
    let s = GameState::connect_four_from_moves(7, 6, "001122").unwrap();
    let cfg = SearchConfig { simulations: 300, ..SearchConfig::default() };
    let tree = mcts_search(&s, &RolloutEvaluator::new(1), &cfg, &mut seeded(2)).unwrap();
    let pi = tree.policy(0.0).unwrap();
    assert_eq!(pi.actions[pi.argmax()], Action(3));
}

#[test]
fn search_with_exact_values_prefers_optimal_moves() {
    let mut rng = seeded(3);
    let mut solver = Solver::new(SolverConfig::default());
    let eval = SolverEvaluator::new(SolverConfig::default());
    let cfg = SearchConfig { simulations: 200, ..SearchConfig::default() };
    for _ in 0..40 {
        let s = random_c4_position(5, 4, 10, &mut rng);
        let optimal = solver.solve(&s).unwrap().optimal_actions;
        let tree = mcts_search(&s, &eval, &cfg, &mut rng).unwrap();
        let pi = tree.policy(0.0).unwrap();
        assert!(optimal.contains(&pi.actions[pi.argmax()]), "{:?}", s.observation_key());
    }
}

#[test]
fn searches_repeat_under_the_same_seed() {
    let s = GameState::connect_four_from_moves(7, 6, "3324").unwrap();
    let cfg = SearchConfig { simulations: 80, ..SearchConfig::default() };
    let a = mcts_search(&s, &RolloutEvaluator::new(2), &cfg, &mut seeded(9)).unwrap();
    let b = mcts_search(&s, &RolloutEvaluator::new(2), &cfg, &mut seeded(9)).unwrap();
    assert_eq!(a.policy(1.0).unwrap(), b.policy(1.0).unwrap());
}
