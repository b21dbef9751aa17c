use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gnpgames::game::{play, Convention, GameSpec, GreedyLowest, RandomStrategy, Reason, Role, Strategy, Target};
use gnpgames::graph::{sample_gnp, GnpParams, Graph};
use gnpgames::hypergraph::{
    avoider_criterion, beck_criterion, AvoiderPotential, BreakerPotential, Hypergraph, PotentialTracker,
};
use gnpgames::strategies::{build_strategy, strategy_names, RegistryError};

/// `(strategy, side, convention, target)` for each registered strategy.
fn roster() -> Vec<(&'static str, Role, Convention, Target)> {
    vec![
        ("random", Role::Maker, Convention::MakerBreaker, Target::Connectivity),
        ("lowest", Role::Breaker, Convention::MakerBreaker, Target::Connectivity),
        ("breaker-isolator", Role::Breaker, Convention::MakerBreaker, Target::IsolateVertex),
        ("maker-min-degree", Role::Maker, Convention::MakerBreaker, Target::MinDegree(2)),
        ("maker-ham-pipeline", Role::Maker, Convention::MakerBreaker, Target::Hamiltonicity),
        ("maker-kconn-pipeline", Role::Maker, Convention::MakerBreaker, Target::KConnectivity(2)),
        ("avoider-isolator", Role::Maker, Convention::AvoiderEnforcerMonotone, Target::IsolateVertex),
        ("enforcer-forcer", Role::Breaker, Convention::AvoiderEnforcerMonotone, Target::Connectivity),
    ]
}

fn run(name: &str, side: Role, spec: &GameSpec, g: &Arc<Graph>, seed: u64) -> gnpgames::game::GameResult {
    let mut mine = build_strategy(name, &BTreeMap::new(), spec).unwrap();
    let mut other: Box<dyn Strategy> = Box::new(RandomStrategy);
    let (m, b): (&mut dyn Strategy, &mut dyn Strategy) =
        if side == Role::Maker { (&mut mine, &mut other) } else { (&mut other, &mut mine) };
    play(spec, g.clone(), m, b, seed).unwrap()
}

#[test]
fn graph_strategies_play_legally_and_reproducibly() {
    for (name, side, conv, target) in roster() {
        for seed in 0..10u64 {
            let g = Arc::new(sample_gnp(&GnpParams::new(24, 0.5, seed).unwrap()).unwrap());
            let spec = GameSpec::new(conv, target.clone(), 1, 2);
            let r1 = run(name, side, &spec, &g, seed);
            let r2 = run(name, side, &spec, &g, seed);
            if let Some(d) = &r1.detail {
                assert!(!d.contains("illegal move"), "{name} seed {seed}: {d}");
            }
            assert_eq!(r1.final_state.history(), r2.final_state.history(), "{name} seed {seed}");
            assert_eq!(r1.winner, r2.winner);
        }
    }
}

#[test]
fn every_registered_strategy_has_a_roster_entry() {
    let mut names: Vec<&str> = roster().iter().map(|r| r.0).collect();
    names.extend(["breaker-potential", "avoider-potential"]);
    names.sort_unstable();
    let mut registered = strategy_names();
    registered.sort_unstable();
    assert_eq!(names, registered);
}

#[test]
fn registry_rejects_unknown_names_and_options() {
    let spec = GameSpec::maker_breaker(Target::Connectivity, 1, 1);
    let none = BTreeMap::new();
    assert!(matches!(build_strategy("nope", &none, &spec), Err(RegistryError::Unknown(_))));
    let typo = BTreeMap::from([("epss".to_string(), "0.1".to_string())]);
    assert!(build_strategy("breaker-isolator", &typo, &spec).is_err());
    let bad = BTreeMap::from([("eps".to_string(), "lots".to_string())]);
    assert!(build_strategy("breaker-isolator", &bad, &spec).is_err());
    let ok = BTreeMap::from([("eps".to_string(), "0.25".to_string())]);
    let s = build_strategy("breaker-isolator", &ok, &spec).unwrap();
    assert_eq!(s.name(), "breaker-isolator");
}

#[test]
fn isolator_wins_clearly_above_the_threshold() {
    let mut wins = 0;
    for seed in 0..20u64 {
        let g = Arc::new(sample_gnp(&GnpParams::new(40, 0.5, seed).unwrap()).unwrap());
        let spec = GameSpec::maker_breaker(Target::IsolateVertex, 1, 200);
        let r = run("breaker-isolator", Role::Breaker, &spec, &g, seed);
        wins += usize::from(r.winner == Role::Breaker);
    }
    assert_eq!(wins, 20);
}

fn live_potential(h: &Hypergraph, base: f64, claimer: &[bool], killer: &[bool]) -> f64 {
    h.sets()
        .iter()
        .filter(|s| s.iter().all(|&x| !killer[x]))
        .map(|s| base.powi(-(s.iter().filter(|&&x| !claimer[x]).count() as i32)))
        .sum()
}

fn random_family(rng: &mut ChaCha8Rng, ground: usize, max_sets: usize, max_len: usize) -> Hypergraph {
    let sets = (0..rng.gen_range(1..=max_sets))
        .map(|_| {
            let k = rng.gen_range(1..=max_len.min(ground));
            rand::seq::index::sample(rng, ground, k).into_vec()
        })
        .collect();
    Hypergraph::new(ground, sets).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tracker_matches_direct_sum(seed in any::<u64>(), base in 1.1f64..4.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ground = rng.gen_range(2..20);
        let h = random_family(&mut rng, ground, 11, 6);
        let mut t = PotentialTracker::new(h.clone(), base);
        let (mut claimer, mut killer) = (vec![false; ground], vec![false; ground]);
        let mut order: Vec<usize> = (0..ground).collect();
        rand::seq::SliceRandom::shuffle(&mut order[..], &mut rng);
        for x in order {
            let before = t.potential();
            if rng.gen() {
                let gain = t.claim_gain(x);
                t.claim(x);
                claimer[x] = true;
                prop_assert!((t.potential() - before - gain).abs() < 1e-9);
            } else {
                let gain = t.kill_gain(x);
                t.kill(x);
                killer[x] = true;
                prop_assert!((before - t.potential() - gain).abs() < 1e-9);
            }
            let direct = live_potential(&h, base, &claimer, &killer);
            prop_assert!((t.potential() - direct).abs() < 1e-9);
            prop_assert!((t.from_scratch() - direct).abs() < 1e-9);
        }
    }
}

#[test]
fn breaker_potential_wins_whenever_the_criterion_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = 0;
    while checked < 300 {
        let ground = rng.gen_range(6..30);
        let h = random_family(&mut rng, ground, 5, 8);
        let (a, b) = (rng.gen_range(1..=2), rng.gen_range(1..=4));
        if !beck_criterion(&h, a, b).satisfied {
            continue;
        }
        checked += 1;
        let g = Arc::new(Graph::abstract_board(ground));
        let spec = GameSpec::maker_breaker(Target::ExplicitHypergraph(Arc::new(h)), a, b);
        for first in [Role::Maker, Role::Breaker] {
            let spec = spec.clone().with_first(first);
            let mut breaker = BreakerPotential::new(a, b);
            let r = play(&spec, g.clone(), &mut GreedyLowest, &mut breaker, checked).unwrap();
            assert_eq!(r.winner, Role::Breaker, "{spec:?}: {:?}", r.detail);
            let mut breaker = BreakerPotential::new(a, b);
            let r = play(&spec, g.clone(), &mut RandomStrategy, &mut breaker, checked).unwrap();
            assert_eq!(r.winner, Role::Breaker, "{spec:?}: {:?}", r.detail);
        }
    }
}

#[test]
fn avoider_potential_wins_whenever_the_criterion_holds() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut checked = 0;
    while checked < 300 {
        let ground = rng.gen_range(6..30);
        let h = random_family(&mut rng, ground, 5, 10);
        let (a, b) = (rng.gen_range(1..=2), rng.gen_range(1..=3));
        if !avoider_criterion(&h, a, b).satisfied {
            continue;
        }
        checked += 1;
        let g = Arc::new(Graph::abstract_board(ground));
        let spec = GameSpec::avoider_enforcer(Target::ExplicitHypergraph(Arc::new(h)), a, b);
        for first in [Role::Maker, Role::Breaker] {
            let spec = spec.clone().with_first(first);
            let mut avoider = AvoiderPotential::new(a);
            let r = play(&spec, g.clone(), &mut avoider, &mut RandomStrategy, checked).unwrap();
            assert_eq!(r.winner, Role::Maker, "{spec:?}: {:?}", r.detail);
            assert_ne!(r.reason, Reason::Forfeit);
        }
    }
}
