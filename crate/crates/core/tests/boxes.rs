use std::collections::HashMap;

use proptest::prelude::*;

use gnpgames::boxes::{
    boxmaker_strategy, boxmaker_vs_optimal_breaker, enforcer_rbox_strategy, enforcer_vs_optimal_avoider,
    solve_box_exact, solve_rbox_exact, BoxRole, BoxState, RBoxRole, RBoxState,
};

/// Every way to hand out `k` unit claims over boxes with capacities `caps`.
fn distributions(caps: &[usize], k: usize) -> Vec<Vec<usize>> {
    if caps.is_empty() {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for take in 0..=caps[0].min(k) {
        for mut rest in distributions(&caps[1..], k - take) {
            rest.insert(0, take);
            out.push(rest);
        }
    }
    out
}

/// Forward box game value from BoxMaker's turn; `open` lists the unclaimed
/// counts of surviving boxes.
fn box_reference(open: Vec<usize>, b: usize, memo: &mut HashMap<Vec<usize>, bool>) -> bool {
    let mut key = open.clone();
    key.sort_unstable();
    if let Some(&w) = memo.get(&key) {
        return w;
    }
    let total: usize = open.iter().sum();
    let win = if total == 0 {
        false
    } else {
        distributions(&open, b.min(total)).into_iter().any(|d| {
            let after: Vec<usize> = open.iter().zip(&d).map(|(o, t)| o - t).collect();
            if after.contains(&0) {
                return true;
            }
            // BoxBreaker destroys one box; BoxMaker must win after each choice.
            (0..after.len()).all(|i| {
                let mut rest = after.clone();
                rest.remove(i);
                box_reference(rest, b, memo)
            })
        })
    };
    memo.insert(key, win);
    win
}

/// Reverse box game value: `true` when Enforcer wins. Boxes are
/// `(size, avoider, enforcer)`.
fn rbox_reference(
    boxes: Vec<(usize, usize, usize)>,
    p: usize,
    q: usize,
    avoider_to_move: bool,
    memo: &mut HashMap<(Vec<(usize, usize, usize)>, bool), bool>,
) -> bool {
    if boxes.iter().any(|&(s, a, _)| a == s) {
        return true;
    }
    let caps: Vec<usize> = boxes.iter().map(|&(s, a, e)| s - a - e).collect();
    let total: usize = caps.iter().sum();
    if total == 0 {
        return false;
    }
    let mut key = boxes.clone();
    key.sort_unstable();
    if let Some(&w) = memo.get(&(key.clone(), avoider_to_move)) {
        return w;
    }
    let lo = if avoider_to_move { p } else { q }.min(total);
    let mut results = (lo..=total).flat_map(|k| distributions(&caps, k)).map(|d| {
        let next: Vec<_> = boxes
            .iter()
            .zip(&d)
            .map(|(&(s, a, e), &t)| if avoider_to_move { (s, a + t, e) } else { (s, a, e + t) })
            .collect();
        rbox_reference(next, p, q, !avoider_to_move, memo)
    });
    let enforcer_wins = if avoider_to_move { results.all(|w| w) } else { results.any(|w| w) };
    memo.insert((key, avoider_to_move), enforcer_wins);
    enforcer_wins
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn box_solver_matches_reference(sizes in prop::collection::vec(1usize..5, 1..5), b in 1usize..5) {
        let want = box_reference(sizes.clone(), b, &mut HashMap::new());
        let got = solve_box_exact(&BoxState::with_sizes(sizes.clone(), b)).unwrap();
        prop_assert_eq!(got == BoxRole::BoxMaker, want, "sizes {:?} b {}", sizes, b);
    }

    #[test]
    fn rbox_solver_matches_reference(
        sizes in prop::collection::vec(1usize..4, 1..4),
        p in 1usize..3,
        q in 1usize..3,
        avoider_first in any::<bool>(),
    ) {
        let boxes = sizes.iter().map(|&s| (s, 0, 0)).collect();
        let want = rbox_reference(boxes, p, q, avoider_first, &mut HashMap::new());
        let first = if avoider_first { RBoxRole::Avoider } else { RBoxRole::Enforcer };
        let got = solve_rbox_exact(&RBoxState::new(sizes.clone(), p, q, first).unwrap()).unwrap();
        prop_assert_eq!(got == RBoxRole::Enforcer, want, "sizes {:?} p {} q {}", sizes, p, q);
    }

    /// A strategy can only win where the game itself is a win.
    #[test]
    fn fixed_strategies_never_beat_the_game_value(
        sizes in prop::collection::vec(1usize..5, 1..5),
        b in 1usize..5,
        p in 1usize..3,
        q in 1usize..3,
    ) {
        let fwd = BoxState::with_sizes(sizes.clone(), b);
        if boxmaker_vs_optimal_breaker(&fwd).unwrap() == BoxRole::BoxMaker {
            prop_assert_eq!(solve_box_exact(&fwd).unwrap(), BoxRole::BoxMaker);
        }
        let rev = RBoxState::new(sizes, p, q, RBoxRole::Avoider).unwrap();
        if enforcer_vs_optimal_avoider(&rev).unwrap() == RBoxRole::Enforcer {
            prop_assert_eq!(solve_rbox_exact(&rev).unwrap(), RBoxRole::Enforcer);
        }
    }

    #[test]
    fn strategy_moves_are_legal(sizes in prop::collection::vec(1usize..6, 1..6), b in 1usize..6, q in 1usize..4) {
        let mut fwd = BoxState::with_sizes(sizes.clone(), b);
        while fwd.winner().is_none() {
            let claim = boxmaker_strategy(&fwd);
            fwd.apply_maker(&claim).unwrap();
            if fwd.winner().is_some() {
                break;
            }
            let kill = fwd.surviving().max_by_key(|&i| fwd.claimed[i]).unwrap();
            fwd.apply_breaker(kill).unwrap();
        }

        let mut rev = RBoxState::new(sizes, 1, q, RBoxRole::Enforcer).unwrap();
        while rev.winner().is_none() {
            let claim = if rev.to_move == RBoxRole::Enforcer {
                enforcer_rbox_strategy(&rev)
            } else {
                let i = (0..rev.sizes.len()).find(|&i| rev.free(i) > 0).unwrap();
                vec![i]
            };
            rev.apply(&claim).unwrap();
        }
    }
}

#[test]
fn enough_boxes_force_avoider_to_fill_one() {
    use gnpgames::boxes::rbox_min_boxes;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for (k, p) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 4), (2, 1)] {
        let n = rbox_min_boxes(k, p).ceil() as usize;
        for _ in 0..4 {
            let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=k)).collect();
            for first in [RBoxRole::Avoider, RBoxRole::Enforcer] {
                let s = RBoxState::new(sizes.clone(), p, 1, first).unwrap();
                assert_eq!(solve_rbox_exact(&s).unwrap(), RBoxRole::Enforcer, "k={k} p={p} sizes {sizes:?} {first:?}");
            }
        }
    }
}

#[test]
fn illegal_box_moves_are_rejected() {
    let mut s = BoxState::new(3, 2, 2);
    assert!(s.apply_breaker(0).is_err());
    assert!(s.apply_maker(&[0]).is_err());
    assert!(s.apply_maker(&[0, 0, 0]).is_err());
    s.apply_maker(&[0, 1]).unwrap();
    s.apply_breaker(0).unwrap();
    assert!(s.apply_maker(&[0, 1]).is_err());
    assert!(RBoxState::new(vec![0, 2], 1, 1, RBoxRole::Avoider).is_err());
}
