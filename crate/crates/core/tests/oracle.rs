use std::collections::HashMap;
use std::sync::Arc;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gnpgames::game::{BoardState, Convention, GameSpec, Role, Target};
use gnpgames::graph::{sample_gnp, GnpParams, Graph};
use gnpgames::hypergraph::Hypergraph;
use gnpgames::oracle::{solve_exact, solve_exact_plain, OracleError, MAX_ORACLE_EDGES};

/// Property of an edge subset, computed directly from the edge list.
fn holds(g: &Graph, target: &Target, mask: u32) -> bool {
    let n = g.n();
    let chosen = (0..g.edge_count()).filter(|&e| mask >> e & 1 == 1).map(|e| g.edge(e));
    match target {
        Target::Connectivity => {
            let mut root: Vec<usize> = (0..n).collect();
            fn find(r: &mut [usize], x: usize) -> usize {
                if r[x] == x { x } else { let y = find(r, r[x]); r[x] = y; y }
            }
            let mut parts = n;
            for e in chosen {
                let (a, b) = (find(&mut root, e.u()), find(&mut root, e.v()));
                if a != b {
                    root[a] = b;
                    parts -= 1;
                }
            }
            parts <= 1
        }
        Target::MinDegree(k) => {
            let mut deg = vec![0; n];
            for e in chosen {
                deg[e.u()] += 1;
                deg[e.v()] += 1;
            }
            deg.iter().all(|&d| d >= *k)
        }
        Target::ExplicitHypergraph(h) => h
            .sets()
            .iter()
            .any(|s| s.iter().all(|&x| mask >> x & 1 == 1)),
        other => panic!("no reference checker for {other:?}"),
    }
}

/// Game value by recursion over whole turns and every legal claim set.
fn reference_value(g: &Graph, spec: &GameSpec) -> Role {
    fn go(
        g: &Graph,
        spec: &GameSpec,
        maker: u32,
        breaker: u32,
        mover: Role,
        memo: &mut HashMap<(u32, u32, Role), Role>,
    ) -> Role {
        let ae = spec.convention == Convention::AvoiderEnforcerMonotone;
        if holds(g, &spec.target, maker) {
            return if ae { Role::Breaker } else { Role::Maker };
        }
        let all = (1u32 << g.edge_count()) - 1;
        let free = all & !(maker | breaker);
        if free == 0 {
            return if ae { Role::Maker } else { Role::Breaker };
        }
        if let Some(&w) = memo.get(&(maker, breaker, mover)) {
            return w;
        }
        let k = free.count_ones() as usize;
        let bias = spec.bias(mover).min(k);
        let hi = if ae { k } else { bias };
        let mut win = mover.other();
        let mut sub = free;
        loop {
            let size = sub.count_ones() as usize;
            if size >= bias && size <= hi {
                let (m2, b2) = match mover {
                    Role::Maker => (maker | sub, breaker),
                    Role::Breaker => (maker, breaker | sub),
                };
                if go(g, spec, m2, b2, mover.other(), memo) == mover {
                    win = mover;
                    break;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
        memo.insert((maker, breaker, mover), win);
        win
    }
    go(g, spec, 0, 0, spec.first_player, &mut HashMap::new())
}

fn small_board(rng: &mut ChaCha8Rng, max_edges: usize) -> Graph {
    loop {
        let n = rng.gen_range(3..=6);
        let p = rng.gen_range(0.3..0.9);
        let g = sample_gnp(&GnpParams::new(n, p, rng.gen()).unwrap()).unwrap();
        if g.edge_count() <= max_edges && g.edge_count() > 0 {
            return g;
        }
    }
}

fn random_target(rng: &mut ChaCha8Rng, g: &Graph) -> Target {
    match rng.gen_range(0..3) {
        0 => Target::Connectivity,
        1 => Target::MinDegree(rng.gen_range(1..=2)),
        _ => {
            let m = g.edge_count();
            let sets = (0..rng.gen_range(1..=3))
                .map(|_| {
                    let k = rng.gen_range(1..=m.min(3));
                    rand::seq::index::sample(rng, m, k).into_vec()
                })
                .collect();
            Target::ExplicitHypergraph(Arc::new(Hypergraph::new(m, sets).unwrap()))
        }
    }
}

fn random_spec(rng: &mut ChaCha8Rng, g: &Graph) -> GameSpec {
    let conv = if rng.gen() { Convention::MakerBreaker } else { Convention::AvoiderEnforcerMonotone };
    let first = if rng.gen() { Role::Maker } else { Role::Breaker };
    GameSpec::new(conv, random_target(rng, g), rng.gen_range(1..=2), rng.gen_range(1..=3)).with_first(first)
}

#[test]
fn exact_solver_matches_reference_minimax() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..400 {
        let g = Arc::new(small_board(&mut rng, 9));
        let spec = random_spec(&mut rng, &g);
        let want = reference_value(&g, &spec);
        let got = solve_exact(&spec, &g).unwrap();
        assert_eq!(got.winner, want, "instance {i}: {spec:?} on {}", g.to_text());
    }
}

#[test]
fn memoised_and_plain_solvers_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..500 {
        let g = Arc::new(small_board(&mut rng, 10));
        let spec = random_spec(&mut rng, &g);
        let memo = solve_exact(&spec, &g).unwrap().winner;
        let plain = solve_exact_plain(&spec, &g).unwrap();
        assert_eq!(memo, plain, "instance {i}: {spec:?} on {}", g.to_text());
    }
}

#[test]
fn principal_variation_replays_to_the_solved_outcome() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for i in 0..300 {
        let g = Arc::new(small_board(&mut rng, 10));
        let spec = random_spec(&mut rng, &g);
        let res = solve_exact(&spec, &g).unwrap();
        let end = BoardState::replay(spec.clone(), g.clone(), &res.principal_variation).unwrap();
        let (winner, _) = end.outcome().expect("line ends in a decided position");
        assert_eq!(winner, res.winner, "instance {i}");
    }
}

#[test]
fn winner_is_invariant_under_vertex_relabelling() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for i in 0..300 {
        let g = small_board(&mut rng, 10);
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rng);
        let h = Graph::from_edges(g.n(), g.edges().iter().map(|e| (perm[e.u()], perm[e.v()]))).unwrap();
        let target = if rng.gen() { Target::Connectivity } else { Target::MinDegree(1) };
        let conv = if rng.gen() { Convention::MakerBreaker } else { Convention::AvoiderEnforcerMonotone };
        let spec = GameSpec::new(conv, target, 1, rng.gen_range(1..=3));
        let a = solve_exact(&spec, &Arc::new(g)).unwrap().winner;
        let b = solve_exact(&spec, &Arc::new(h)).unwrap().winner;
        assert_eq!(a, b, "instance {i}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    /// In Maker-Breaker games moving first never hurts.
    #[test]
    fn moving_first_never_hurts_in_maker_breaker(seed in any::<u64>(), b in 1usize..4, t in 0u8..2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = Arc::new(small_board(&mut rng, 10));
        let target = if t == 0 { Target::Connectivity } else { Target::MinDegree(1) };
        let spec = GameSpec::maker_breaker(target, 1, b);
        let maker_first = solve_exact(&spec.clone().with_first(Role::Maker), &g).unwrap().winner;
        let maker_second = solve_exact(&spec.with_first(Role::Breaker), &g).unwrap().winner;
        if maker_second == Role::Maker {
            prop_assert_eq!(maker_first, Role::Maker);
        }
    }
}

#[test]
fn known_small_values() {
    // Any two triangle edges span it: Maker gets two at bias (1,1) but only
    // one at (1,2).
    let k3 = Arc::new(Graph::complete(3));
    let spec = GameSpec::maker_breaker(Target::Connectivity, 1, 1);
    assert_eq!(solve_exact(&spec, &k3).unwrap().winner, Role::Maker);
    let spec = GameSpec::maker_breaker(Target::Connectivity, 1, 2);
    assert_eq!(solve_exact(&spec, &k3).unwrap().winner, Role::Breaker);
    // A path is only spanned if Maker owns every edge.
    let p4 = Arc::new(Graph::path(4));
    let spec = GameSpec::maker_breaker(Target::Connectivity, 1, 1);
    assert_eq!(solve_exact(&spec, &p4).unwrap().winner, Role::Breaker);
    // Avoider on a path is forced to take an edge, but never all of them.
    let spec = GameSpec::avoider_enforcer(Target::Connectivity, 1, 1);
    assert_eq!(solve_exact(&spec, &p4).unwrap().winner, Role::Maker);
}

#[test]
fn oversized_boards_are_refused() {
    let g = Arc::new(Graph::complete(7));
    assert!(g.edge_count() > MAX_ORACLE_EDGES);
    let spec = GameSpec::maker_breaker(Target::Connectivity, 1, 1);
    assert!(matches!(solve_exact(&spec, &g), Err(OracleError::TooLarge { .. })));
}
