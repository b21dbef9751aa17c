//! Box(m, ℓ, b): BoxMaker claims `b` elements per round, BoxBreaker then
//! destroys one box. BoxMaker wins by filling a box before it is destroyed.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{BoxError, BOX_EXACT_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoxRole {
    BoxMaker,
    BoxBreaker,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxState {
    pub sizes: Vec<usize>,
    pub claimed: Vec<usize>,
    pub destroyed: Vec<bool>,
    pub bias: usize,
    pub to_move: BoxRole,
}

impl BoxState {
    /// `m` boxes of size `l`, BoxMaker to move.
    pub fn new(m: usize, l: usize, b: usize) -> Self {
        Self::with_sizes(vec![l; m], b)
    }

    pub fn with_sizes(sizes: Vec<usize>, b: usize) -> Self {
        let m = sizes.len();
        BoxState {
            sizes,
            claimed: vec![0; m],
            destroyed: vec![false; m],
            bias: b,
            to_move: BoxRole::BoxMaker,
        }
    }

    pub fn unclaimed(&self, i: usize) -> usize {
        self.sizes[i] - self.claimed[i]
    }

    pub fn surviving(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.sizes.len()).filter(|&i| !self.destroyed[i])
    }

    fn open_elements(&self) -> usize {
        self.surviving().map(|i| self.unclaimed(i)).sum()
    }

    pub fn winner(&self) -> Option<BoxRole> {
        if self.surviving().any(|i| self.unclaimed(i) == 0) {
            Some(BoxRole::BoxMaker)
        } else if self.open_elements() == 0 {
            Some(BoxRole::BoxBreaker)
        } else {
            None
        }
    }

    /// BoxMaker claims one element per entry of `boxes`.
    pub fn apply_maker(&mut self, boxes: &[usize]) -> Result<(), BoxError> {
        if self.to_move != BoxRole::BoxMaker || self.winner().is_some() {
            return Err(BoxError::Illegal("not BoxMaker's turn".into()));
        }
        let want = self.bias.min(self.open_elements());
        if boxes.len() != want {
            return Err(BoxError::Illegal(format!("claimed {} elements, {want} required", boxes.len())));
        }
        let mut next = self.claimed.clone();
        for &i in boxes {
            if i >= self.sizes.len() || self.destroyed[i] || next[i] >= self.sizes[i] {
                return Err(BoxError::Illegal(format!("no unclaimed element in box {i}")));
            }
            next[i] += 1;
        }
        self.claimed = next;
        self.to_move = BoxRole::BoxBreaker;
        Ok(())
    }

    pub fn apply_breaker(&mut self, i: usize) -> Result<(), BoxError> {
        if self.to_move != BoxRole::BoxBreaker || self.winner().is_some() {
            return Err(BoxError::Illegal("not BoxBreaker's turn".into()));
        }
        if i >= self.sizes.len() || self.destroyed[i] {
            return Err(BoxError::Illegal(format!("box {i} cannot be destroyed")));
        }
        self.destroyed[i] = true;
        self.to_move = BoxRole::BoxMaker;
        Ok(())
    }

    /// Unclaimed counts of surviving boxes, sorted.
    pub fn signature(&self) -> Vec<u8> {
        let mut s: Vec<u8> = self.surviving().map(|i| self.unclaimed(i) as u8).collect();
        s.sort_unstable();
        s
    }
}

/// BoxMaker's balancing rule. If a surviving box can be filled this turn,
/// fill the one with the fewest unclaimed elements; otherwise hand out the
/// `b` claims one at a time, each to the surviving box with the most
/// unclaimed elements (lowest index on ties).
pub fn boxmaker_strategy(s: &BoxState) -> Vec<usize> {
    let b = s.bias.min(s.open_elements());
    let mut left: Vec<usize> = (0..s.sizes.len())
        .map(|i| if s.destroyed[i] { 0 } else { s.unclaimed(i) })
        .collect();
    let mut out = Vec::with_capacity(b);
    let closest = s
        .surviving()
        .filter(|&i| left[i] > 0)
        .min_by_key(|&i| (left[i], i));
    if let Some(i) = closest {
        if left[i] <= b {
            out.extend(std::iter::repeat(i).take(left[i]));
            left[i] = 0;
        }
    }
    while out.len() < b {
        let i = (0..left.len())
            .filter(|&i| left[i] > 0)
            .max_by_key(|&i| (left[i], std::cmp::Reverse(i)))
            .expect("enough open elements");
        out.push(i);
        left[i] -= 1;
    }
    out
}

fn check_limit(elements: usize) -> Result<(), BoxError> {
    if elements > BOX_EXACT_LIMIT {
        return Err(BoxError::TooLarge {
            elements,
            limit: BOX_EXACT_LIMIT,
        });
    }
    Ok(())
}

/// Winner under optimal play, memoized on sorted box signatures.
pub fn solve_box_exact(s: &BoxState) -> Result<BoxRole, BoxError> {
    check_limit(s.open_elements())?;
    if let Some(w) = s.winner() {
        return Ok(w);
    }
    let mut memo = HashMap::new();
    Ok(solve(&s.signature(), s.bias, s.to_move, &mut memo))
}

fn solve(sig: &[u8], b: usize, mover: BoxRole, memo: &mut HashMap<(Vec<u8>, BoxRole), BoxRole>) -> BoxRole {
    if sig.iter().any(|&x| x == 0) {
        return BoxRole::BoxMaker;
    }
    if sig.is_empty() {
        return BoxRole::BoxBreaker;
    }
    let key = (sig.to_vec(), mover);
    if let Some(&w) = memo.get(&key) {
        return w;
    }
    let w = match mover {
        BoxRole::BoxMaker => {
            if sig[0] as usize <= b {
                BoxRole::BoxMaker
            } else {
                let total: usize = sig.iter().map(|&x| x as usize).sum();
                let units = b.min(total);
                let mut win = false;
                let mut cur = sig.to_vec();
                distribute(&mut cur, 0, units, &mut |next| {
                    let mut n = next.to_vec();
                    n.sort_unstable();
                    win = solve(&n, b, BoxRole::BoxBreaker, memo) == BoxRole::BoxMaker;
                    win
                });
                if win {
                    BoxRole::BoxMaker
                } else {
                    BoxRole::BoxBreaker
                }
            }
        }
        BoxRole::BoxBreaker => {
            let mut best = BoxRole::BoxMaker;
            for i in 0..sig.len() {
                if i > 0 && sig[i] == sig[i - 1] {
                    continue;
                }
                let mut n = sig.to_vec();
                n.remove(i);
                if solve(&n, b, BoxRole::BoxMaker, memo) == BoxRole::BoxBreaker {
                    best = BoxRole::BoxBreaker;
                    break;
                }
            }
            best
        }
    };
    memo.insert(key, w);
    w
}

/// Enumerates ways to remove `units` from the entries of `cur` from index
/// `from` on, stopping when `f` returns true.
fn distribute(cur: &mut Vec<u8>, from: usize, units: usize, f: &mut dyn FnMut(&[u8]) -> bool) -> bool {
    if units == 0 {
        return f(cur);
    }
    if from >= cur.len() {
        return false;
    }
    let cap = (cur[from] as usize).min(units);
    for take in (0..=cap).rev() {
        cur[from] -= take as u8;
        let done = distribute(cur, from + 1, units - take, f);
        cur[from] += take as u8;
        if done {
            return true;
        }
    }
    false
}

/// Winner when BoxMaker follows [`boxmaker_strategy`] and BoxBreaker plays
/// optimally.
pub fn boxmaker_vs_optimal_breaker(s: &BoxState) -> Result<BoxRole, BoxError> {
    check_limit(s.open_elements())?;
    Ok(fixed_maker(s))
}

fn fixed_maker(s: &BoxState) -> BoxRole {
    if let Some(w) = s.winner() {
        return w;
    }
    match s.to_move {
        BoxRole::BoxMaker => {
            let mut n = s.clone();
            n.apply_maker(&boxmaker_strategy(s)).expect("strategy is legal");
            fixed_maker(&n)
        }
        BoxRole::BoxBreaker => {
            for i in s.surviving().collect::<Vec<_>>() {
                let mut n = s.clone();
                n.apply_breaker(i).expect("surviving box");
                if fixed_maker(&n) == BoxRole::BoxBreaker {
                    return BoxRole::BoxBreaker;
                }
            }
            BoxRole::BoxMaker
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Plain game tree over full states, no memo, no symmetry.
    fn brute(s: &BoxState) -> BoxRole {
        if let Some(w) = s.winner() {
            return w;
        }
        match s.to_move {
            BoxRole::BoxMaker => {
                let units = s.bias.min(s.open_elements());
                let mut opts = Vec::new();
                multisets(s, 0, units, &mut Vec::new(), &mut opts);
                for o in opts {
                    let mut n = s.clone();
                    n.apply_maker(&o).unwrap();
                    if brute(&n) == BoxRole::BoxMaker {
                        return BoxRole::BoxMaker;
                    }
                }
                BoxRole::BoxBreaker
            }
            BoxRole::BoxBreaker => {
                for i in s.surviving().collect::<Vec<_>>() {
                    let mut n = s.clone();
                    n.apply_breaker(i).unwrap();
                    if brute(&n) == BoxRole::BoxBreaker {
                        return BoxRole::BoxBreaker;
                    }
                }
                BoxRole::BoxMaker
            }
        }
    }

    fn multisets(s: &BoxState, from: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for i in from..s.sizes.len() {
            let used = cur.iter().filter(|&&x| x == i).count();
            if !s.destroyed[i] && used < s.unclaimed(i) {
                cur.push(i);
                multisets(s, i, k - 1, cur, out);
                cur.pop();
            }
        }
    }

    #[test]
    fn examples() {
        assert_eq!(solve_box_exact(&BoxState::new(1, 1, 1)).unwrap(), BoxRole::BoxMaker);
        assert_eq!(solve_box_exact(&BoxState::new(2, 2, 1)).unwrap(), BoxRole::BoxBreaker);
        assert_eq!(boxmaker_vs_optimal_breaker(&BoxState::new(2, 1, 1)).unwrap(), BoxRole::BoxMaker);
        assert_eq!(boxmaker_vs_optimal_breaker(&BoxState::new(3, 3, 3)).unwrap(), BoxRole::BoxMaker);
        assert!(solve_box_exact(&BoxState::new(9, 5, 1)).is_err());
    }

    #[test]
    fn solver_matches_brute_force() {
        for m in 1..=4 {
            for l in 1..=3 {
                for b in 1..=3 {
                    let s = BoxState::new(m, l, b);
                    assert_eq!(solve_box_exact(&s).unwrap(), brute(&s), "Box({m},{l},{b})");
                }
            }
        }
        let s = BoxState::with_sizes(vec![3, 1, 2, 4], 2);
        assert_eq!(solve_box_exact(&s).unwrap(), brute(&s));
    }

    #[test]
    fn signature_ignores_box_order() {
        let a = BoxState::with_sizes(vec![3, 1, 4, 2], 2);
        let b = BoxState::with_sizes(vec![4, 2, 3, 1], 2);
        assert_eq!(a.signature(), b.signature());
        assert_eq!(solve_box_exact(&a).unwrap(), solve_box_exact(&b).unwrap());
    }

    #[test]
    fn strategy_is_legal_and_balances() {
        let s = BoxState::new(3, 4, 2);
        assert_eq!(boxmaker_strategy(&s), vec![0, 1]);
        assert_eq!(boxmaker_strategy(&BoxState::new(3, 3, 3)), vec![0, 0, 0]);
        let mut s = BoxState::new(3, 4, 3);
        s.apply_maker(&boxmaker_strategy(&s)).unwrap();
        assert_eq!(s.claimed, vec![1, 1, 1]);
        s.apply_breaker(0).unwrap();
        assert_eq!(boxmaker_strategy(&s), vec![1, 1, 1]);
    }
}
