//! Monotone rBox(b_1..b_n, (p, q)): Avoider claims at least `p` elements per
//! move, Enforcer at least `q`, and Avoider loses iff he claims every
//! element of some box.
//!
//! A box is dead once Enforcer owns one of its elements; its remaining free
//! elements are safe for both sides.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{BoxError, BOX_EXACT_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RBoxRole {
    Avoider,
    Enforcer,
}

impl RBoxRole {
    pub fn other(self) -> RBoxRole {
        match self {
            RBoxRole::Avoider => RBoxRole::Enforcer,
            RBoxRole::Enforcer => RBoxRole::Avoider,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RBoxState {
    pub sizes: Vec<usize>,
    pub avoider: Vec<usize>,
    pub enforcer: Vec<usize>,
    pub p: usize,
    pub q: usize,
    pub to_move: RBoxRole,
}

impl RBoxState {
    /// Sizes are sorted; all elements free.
    pub fn new(mut sizes: Vec<usize>, p: usize, q: usize, first: RBoxRole) -> Result<Self, BoxError> {
        if sizes.contains(&0) || p == 0 || q == 0 {
            return Err(BoxError::Parameter("box sizes and biases must be at least 1".into()));
        }
        sizes.sort_unstable();
        let n = sizes.len();
        Ok(RBoxState {
            sizes,
            avoider: vec![0; n],
            enforcer: vec![0; n],
            p,
            q,
            to_move: first,
        })
    }

    pub fn free(&self, i: usize) -> usize {
        self.sizes[i] - self.avoider[i] - self.enforcer[i]
    }

    pub fn total_free(&self) -> usize {
        (0..self.sizes.len()).map(|i| self.free(i)).sum()
    }

    pub fn is_dead(&self, i: usize) -> bool {
        self.enforcer[i] > 0
    }

    pub fn winner(&self) -> Option<RBoxRole> {
        if (0..self.sizes.len()).any(|i| self.avoider[i] == self.sizes[i]) {
            Some(RBoxRole::Enforcer)
        } else if self.total_free() == 0 {
            Some(RBoxRole::Avoider)
        } else {
            None
        }
    }

    pub fn bias(&self, r: RBoxRole) -> usize {
        match r {
            RBoxRole::Avoider => self.p,
            RBoxRole::Enforcer => self.q,
        }
    }

    /// Legal claim sizes for the mover: `(min, max)`.
    pub fn claim_bounds(&self) -> (usize, usize) {
        let t = self.total_free();
        (self.bias(self.to_move).min(t), t)
    }

    /// The mover claims one element per entry of `boxes`.
    pub fn apply(&mut self, boxes: &[usize]) -> Result<(), BoxError> {
        if self.winner().is_some() {
            return Err(BoxError::Illegal("game is over".into()));
        }
        let (lo, hi) = self.claim_bounds();
        if boxes.len() < lo || boxes.len() > hi {
            return Err(BoxError::Illegal(format!("claimed {} elements, need {lo}..={hi}", boxes.len())));
        }
        let mut next = self.clone();
        for &i in boxes {
            if i >= self.sizes.len() || next.free(i) == 0 {
                return Err(BoxError::Illegal(format!("no free element in box {i}")));
            }
            match self.to_move {
                RBoxRole::Avoider => next.avoider[i] += 1,
                RBoxRole::Enforcer => next.enforcer[i] += 1,
            }
        }
        next.to_move = self.to_move.other();
        *self = next;
        Ok(())
    }

    /// Free counts of live boxes (sorted) and free elements in dead boxes.
    fn signature(&self) -> (Vec<u8>, usize) {
        let mut live = Vec::new();
        let mut sink = 0;
        for i in 0..self.sizes.len() {
            if self.is_dead(i) {
                sink += self.free(i);
            } else {
                live.push(self.free(i) as u8);
            }
        }
        live.sort_unstable();
        (live, sink)
    }
}

/// Enforcer claims exactly the minimum number of elements, one at a time:
/// from a dead box if any has a free element (lowest index), otherwise from
/// the live box with the most free elements (lowest index on ties), which
/// kills the box Avoider is furthest from filling.
pub fn enforcer_rbox_strategy(s: &RBoxState) -> Vec<usize> {
    let (k, _) = s.claim_bounds();
    let mut t = s.clone();
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let n = t.sizes.len();
        let pick = (0..n)
            .find(|&i| t.is_dead(i) && t.free(i) > 0)
            .or_else(|| {
                (0..n)
                    .filter(|&i| t.free(i) > 0)
                    .max_by_key(|&i| (t.free(i), std::cmp::Reverse(i)))
            })
            .expect("free element exists");
        t.enforcer[pick] += 1;
        out.push(pick);
    }
    out
}

fn check_limit(s: &RBoxState) -> Result<(), BoxError> {
    let elements = s.total_free();
    if elements > BOX_EXACT_LIMIT {
        return Err(BoxError::TooLarge {
            elements,
            limit: BOX_EXACT_LIMIT,
        });
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Key {
    live: Vec<u8>,
    sink: usize,
    mover: RBoxRole,
    count: usize,
}

/// Winner under optimal play with every legal claim size.
pub fn solve_rbox_exact(s: &RBoxState) -> Result<RBoxRole, BoxError> {
    check_limit(s)?;
    if let Some(w) = s.winner() {
        return Ok(w);
    }
    // A live box Avoider has already filled cannot exist here.
    let (live, sink) = s.signature();
    let mut memo = HashMap::new();
    Ok(solve(
        Key {
            live,
            sink,
            mover: s.to_move,
            count: 0,
        },
        s.p,
        s.q,
        &mut memo,
    ))
}

fn solve(k: Key, p: usize, q: usize, memo: &mut HashMap<Key, RBoxRole>) -> RBoxRole {
    let total: usize = k.live.iter().map(|&x| x as usize).sum::<usize>() + k.sink;
    if total == 0 {
        return RBoxRole::Avoider;
    }
    if let Some(&w) = memo.get(&k) {
        return w;
    }
    let bias = if k.mover == RBoxRole::Avoider { p } else { q };
    let me = k.mover;
    let mut result = me.other();
    let mut children: Vec<Key> = Vec::new();
    if k.count >= bias {
        children.push(Key {
            mover: me.other(),
            count: 0,
            ..k.clone()
        });
    }
    let next_count = (k.count + 1).min(bias);
    if k.sink > 0 {
        children.push(Key {
            sink: k.sink - 1,
            count: next_count,
            ..k.clone()
        });
    }
    for i in 0..k.live.len() {
        if i > 0 && k.live[i] == k.live[i - 1] {
            continue;
        }
        let mut live = k.live.clone();
        let f = live.remove(i) as usize;
        let child = match me {
            RBoxRole::Avoider => {
                if f == 1 {
                    // Filling a live box loses on the spot.
                    continue;
                }
                live.push((f - 1) as u8);
                live.sort_unstable();
                Key {
                    live,
                    sink: k.sink,
                    mover: me,
                    count: next_count,
                }
            }
            RBoxRole::Enforcer => Key {
                live,
                sink: k.sink + f - 1,
                mover: me,
                count: next_count,
            },
        };
        children.push(child);
    }
    for c in children {
        if solve(c, p, q, memo) == me {
            result = me;
            break;
        }
    }
    memo.insert(k, result);
    result
}

/// Winner when Enforcer follows [`enforcer_rbox_strategy`] and Avoider
/// plays optimally with every legal claim size.
pub fn enforcer_vs_optimal_avoider(s: &RBoxState) -> Result<RBoxRole, BoxError> {
    check_limit(s)?;
    let mut memo = HashMap::new();
    Ok(vs_fixed(s, 0, &mut memo))
}

fn vs_fixed(s: &RBoxState, count: usize, memo: &mut HashMap<(RBoxState, usize), RBoxRole>) -> RBoxRole {
    if let Some(w) = s.winner() {
        return w;
    }
    let key = (s.clone(), count.min(s.p));
    if let Some(&w) = memo.get(&key) {
        return w;
    }
    let w = match s.to_move {
        RBoxRole::Enforcer => {
            let mut n = s.clone();
            n.apply(&enforcer_rbox_strategy(s)).expect("strategy is legal");
            vs_fixed(&n, 0, memo)
        }
        RBoxRole::Avoider => {
            // Avoider claims single elements; `count` of them are already
            // in `s.avoider` this turn and the turn has not been handed over.
            let mut best = RBoxRole::Enforcer;
            if count >= s.p.min(count + s.total_free()) {
                let mut n = s.clone();
                n.to_move = RBoxRole::Enforcer;
                if n.winner().is_some() || vs_fixed(&n, 0, memo) == RBoxRole::Avoider {
                    best = RBoxRole::Avoider;
                }
            }
            if best != RBoxRole::Avoider {
                for i in 0..s.sizes.len() {
                    if s.free(i) == 0 {
                        continue;
                    }
                    let mut n = s.clone();
                    n.avoider[i] += 1;
                    if vs_fixed(&n, count + 1, memo) == RBoxRole::Avoider {
                        best = RBoxRole::Avoider;
                        break;
                    }
                }
            }
            best
        }
    };
    memo.insert(key, w);
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Whole-turn recursion over every legal multiset of claims, on full
    /// states.
    fn brute(s: &RBoxState) -> RBoxRole {
        if let Some(w) = s.winner() {
            return w;
        }
        let (lo, hi) = s.claim_bounds();
        let me = s.to_move;
        for k in lo..=hi {
            let mut opts = Vec::new();
            multisets(s, 0, k, &mut Vec::new(), &mut opts);
            for o in opts {
                let mut n = s.clone();
                n.apply(&o).unwrap();
                if brute(&n) == me {
                    return me;
                }
            }
        }
        me.other()
    }

    fn multisets(s: &RBoxState, from: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for i in from..s.sizes.len() {
            let used = cur.iter().filter(|&&x| x == i).count();
            if used < s.free(i) {
                cur.push(i);
                multisets(s, i, k - 1, cur, out);
                cur.pop();
            }
        }
    }

    #[test]
    fn examples() {
        let s = RBoxState::new(vec![1, 1], 2, 1, RBoxRole::Avoider).unwrap();
        assert_eq!(solve_rbox_exact(&s).unwrap(), RBoxRole::Enforcer);
        let s = RBoxState::new(vec![1, 1, 1], 2, 1, RBoxRole::Avoider).unwrap();
        assert_eq!(enforcer_vs_optimal_avoider(&s).unwrap(), RBoxRole::Enforcer);
        for first in [RBoxRole::Avoider, RBoxRole::Enforcer] {
            let s = RBoxState::new(vec![2; 4], 3, 1, first).unwrap();
            assert_eq!(enforcer_vs_optimal_avoider(&s).unwrap(), RBoxRole::Enforcer);
            assert_eq!(solve_rbox_exact(&s).unwrap(), RBoxRole::Enforcer);
        }
        assert!(RBoxState::new(vec![0, 1], 1, 1, RBoxRole::Avoider).is_err());
    }

    #[test]
    fn solver_matches_brute_force() {
        let cases = [
            (vec![1, 2], 1, 1),
            (vec![2, 2], 1, 1),
            (vec![1, 2, 3], 2, 1),
            (vec![2, 2, 2], 1, 2),
            (vec![1, 1, 3], 1, 1),
            (vec![2, 3], 2, 2),
        ];
        for (sizes, p, q) in cases {
            for first in [RBoxRole::Avoider, RBoxRole::Enforcer] {
                let s = RBoxState::new(sizes.clone(), p, q, first).unwrap();
                assert_eq!(solve_rbox_exact(&s).unwrap(), brute(&s), "{sizes:?} ({p},{q}) {first:?}");
            }
        }
    }

    #[test]
    fn strategy_claims_one_and_prefers_dead_boxes() {
        let mut s = RBoxState::new(vec![2, 3], 1, 1, RBoxRole::Enforcer).unwrap();
        assert_eq!(enforcer_rbox_strategy(&s), vec![1]);
        s.apply(&[1]).unwrap();
        s.apply(&[0]).unwrap();
        assert_eq!(enforcer_rbox_strategy(&s), vec![1]);
    }
}
