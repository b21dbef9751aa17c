//! Erdős–Selfridge style criteria and the weight strategies behind them.
//!
//! Both strategies keep one weight per target set, `base^(-free)` where
//! `free` counts the set's elements the claimer has not yet taken. A set
//! dies once the killer owns one of its elements.

use serde_json::json;

use crate::game::{BoardState, Cursor, Forfeit, Params, Role, Strategy, Target};
use crate::graph::EdgeId;
use crate::rng::GameRng;

use super::Hypergraph;

/// Families with more sets than this are summed with compensation.
const KAHAN_ABOVE: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Criterion {
    pub satisfied: bool,
    pub sum: f64,
    pub threshold: f64,
}

fn sum_terms<I: Iterator<Item = f64>>(terms: I, many: bool) -> f64 {
    if !many {
        return terms.sum();
    }
    let (mut s, mut comp) = (0.0f64, 0.0f64);
    for t in terms {
        let y = t - comp;
        let z = s + y;
        comp = (z - s) - y;
        s = z;
    }
    s
}

/// Breaker wins the (a,b) game if `Σ (1+b)^(-|F|/a) < 1/(1+b)`.
pub fn beck_criterion(h: &Hypergraph, a: usize, b: usize) -> Criterion {
    assert!(a >= 1 && b >= 1, "biases must be positive");
    let base = 1.0 + b as f64;
    let sum = sum_terms(
        h.sets().iter().map(|s| base.powf(-(s.len() as f64) / a as f64)),
        h.len() > KAHAN_ABOVE,
    );
    let threshold = 1.0 / base;
    Criterion {
        satisfied: sum < threshold,
        sum,
        threshold,
    }
}

/// Avoider wins the monotone (a,b) game if
/// `Σ (1+1/a)^(-|F|) < (1+1/a)^(-a)`. The bound does not involve `b`.
pub fn avoider_criterion(h: &Hypergraph, a: usize, b: usize) -> Criterion {
    assert!(a >= 1 && b >= 1, "biases must be positive");
    let base = 1.0 + 1.0 / a as f64;
    let sum = sum_terms(h.sets().iter().map(|s| base.powi(-(s.len() as i32))), h.len() > KAHAN_ABOVE);
    let threshold = base.powi(-(a as i32));
    Criterion {
        satisfied: sum < threshold,
        sum,
        threshold,
    }
}

/// Incrementally maintained potential `Σ_live base^(-free(F))`.
#[derive(Debug, Clone)]
pub struct PotentialTracker {
    h: Hypergraph,
    base: f64,
    /// Elements of each set not yet taken by the claimer.
    free: Vec<u32>,
    live: Vec<bool>,
    weight: Vec<f64>,
    total: f64,
    comp: f64,
    peak: f64,
    owner: Vec<u8>,
}

const FREE: u8 = 0;
const CLAIMER: u8 = 1;
const KILLER: u8 = 2;

impl PotentialTracker {
    pub fn new(h: Hypergraph, base: f64) -> Self {
        let free: Vec<u32> = h.sets().iter().map(|s| s.len() as u32).collect();
        let weight: Vec<f64> = free.iter().map(|&f| base.powi(-(f as i32))).collect();
        let owner = vec![FREE; h.ground()];
        let live = vec![true; h.len()];
        let mut t = PotentialTracker {
            h,
            base,
            free,
            live,
            weight,
            total: 0.0,
            comp: 0.0,
            peak: 0.0,
            owner,
        };
        t.resum();
        t
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.h
    }

    pub fn potential(&self) -> f64 {
        self.total
    }

    pub fn is_free(&self, x: usize) -> bool {
        self.owner[x] == FREE
    }

    /// Recomputes the potential from the ownership alone.
    pub fn from_scratch(&self) -> f64 {
        let terms = self.h.sets().iter().filter_map(|s| {
            if s.iter().any(|&x| self.owner[x] == KILLER) {
                None
            } else {
                let f = s.iter().filter(|&&x| self.owner[x] != CLAIMER).count();
                Some(self.base.powi(-(f as i32)))
            }
        });
        sum_terms(terms, true)
    }

    fn resum(&mut self) {
        let live = &self.live;
        self.total = sum_terms(
            self.weight.iter().enumerate().filter(|(i, _)| live[*i]).map(|(_, &w)| w),
            true,
        );
        self.comp = 0.0;
        self.peak = self.total;
    }

    fn add(&mut self, d: f64) {
        let y = d - self.comp;
        let z = self.total + y;
        self.comp = (z - self.total) - y;
        self.total = z;
        if self.total > self.peak {
            self.peak = self.total;
        }
    }

    fn settle(&mut self) {
        // Cancellation after many removals: start from a clean sum.
        if self.total < 1e-3 * self.peak {
            self.resum();
        }
    }

    /// Potential change if the claimer took `x`.
    pub fn claim_gain(&self, x: usize) -> f64 {
        let mut d = 0.0;
        for &si in self.h.sets_containing(x) {
            let si = si as usize;
            if self.live[si] {
                d += self.weight[si] * (self.base - 1.0);
            }
        }
        d
    }

    /// Potential removed if the killer took `x`.
    pub fn kill_gain(&self, x: usize) -> f64 {
        self.h
            .sets_containing(x)
            .iter()
            .filter(|&&si| self.live[si as usize])
            .map(|&si| self.weight[si as usize])
            .sum()
    }

    pub fn claim(&mut self, x: usize) {
        debug_assert_eq!(self.owner[x], FREE);
        self.owner[x] = CLAIMER;
        let sets: Vec<u32> = self.h.sets_containing(x).to_vec();
        for si in sets {
            let si = si as usize;
            self.free[si] -= 1;
            let w = self.base.powi(-(self.free[si] as i32));
            if self.live[si] {
                self.add(w - self.weight[si]);
            }
            self.weight[si] = w;
        }
    }

    pub fn kill(&mut self, x: usize) {
        debug_assert_eq!(self.owner[x], FREE);
        self.owner[x] = KILLER;
        let sets: Vec<u32> = self.h.sets_containing(x).to_vec();
        for si in sets {
            let si = si as usize;
            if self.live[si] {
                self.live[si] = false;
                self.add(-self.weight[si]);
            }
        }
        self.settle();
    }

    /// Number of live sets fully taken by the claimer.
    pub fn completed(&self) -> usize {
        (0..self.h.len()).filter(|&i| self.live[i] && self.free[i] == 0).count()
    }
}

fn family_of(state: &BoardState) -> Result<&Hypergraph, Forfeit> {
    match &state.spec().target {
        Target::ExplicitHypergraph(h) => Ok(h),
        t => Err(Forfeit(format!("potential strategy needs a hypergraph target, got {t}"))),
    }
}

/// Feeds new moves into the tracker: `killer`'s elements kill sets, the
/// other side's elements are claims.
fn sync(
    tracker: &mut Option<PotentialTracker>,
    cursor: &mut Cursor,
    state: &BoardState,
    base: f64,
    killer: Role,
) -> Result<(), Forfeit> {
    let (fresh, restarted) = cursor.fresh(state);
    if restarted || tracker.is_none() {
        *tracker = Some(PotentialTracker::new(family_of(state)?.clone(), base));
    }
    let t = tracker.as_mut().expect("tracker");
    let moves = if restarted { state.history() } else { fresh };
    for mv in moves {
        for &x in &mv.edges {
            if mv.role == killer {
                t.kill(x);
            } else {
                t.claim(x);
            }
        }
    }
    Ok(())
}

/// Breaker's weight strategy: each of its `b` picks kills the most weight,
/// lowest id on ties. Weights are `(1+b)^(-free/a)` with `free` the number
/// of elements Maker has not claimed.
#[derive(Debug, Clone)]
pub struct BreakerPotential {
    a: usize,
    b: usize,
    tracker: Option<PotentialTracker>,
    cursor: Cursor,
}

impl BreakerPotential {
    pub fn new(a: usize, b: usize) -> Self {
        BreakerPotential {
            a,
            b,
            tracker: None,
            cursor: Cursor::default(),
        }
    }

    pub fn tracker(&self) -> Option<&PotentialTracker> {
        self.tracker.as_ref()
    }

    fn base(&self) -> f64 {
        (1.0 + self.b as f64).powf(1.0 / self.a as f64)
    }
}

/// Free element maximizing (or minimizing) `score`, lowest id on ties.
fn best_free(t: &PotentialTracker, state: &BoardState, maximize: bool, score: impl Fn(usize) -> f64) -> Option<usize> {
    let mut best: Option<(f64, usize)> = None;
    for x in state.free_edges() {
        if !t.is_free(x) {
            continue;
        }
        let s = score(x);
        let better = match best {
            None => true,
            Some((bs, _)) => {
                if maximize {
                    s > bs
                } else {
                    s < bs
                }
            }
        };
        if better {
            best = Some((s, x));
        }
    }
    best.map(|(_, x)| x)
}

impl Strategy for BreakerPotential {
    fn name(&self) -> &str {
        "breaker-potential"
    }

    fn params(&self) -> Params {
        crate::game::params([("a", json!(self.a)), ("b", json!(self.b))])
    }

    fn choose(&mut self, state: &BoardState, _rng: &mut GameRng) -> Result<Vec<EdgeId>, Forfeit> {
        let base = self.base();
        sync(&mut self.tracker, &mut self.cursor, state, base, Role::Breaker)?;
        let me = state.to_move();
        let (k, _) = state.claim_bounds(me);
        // Work on a copy so picks within this move see each other.
        let mut t = self.tracker.clone().expect("synced");
        let mut out = Vec::with_capacity(k);
        for _ in 0..k {
            let x = best_free(&t, state, true, |x| t.kill_gain(x)).ok_or_else(|| Forfeit("no free element".into()))?;
            t.kill(x);
            out.push(x);
        }
        Ok(out)
    }
}

/// Avoider's weight strategy: claims exactly `a` elements per move, each
/// adding the least weight, lowest id on ties. Weights are `(1+1/a)^(-free)`.
/// Also usable by any side that must avoid completing sets.
#[derive(Debug, Clone)]
pub struct AvoiderPotential {
    a: usize,
    tracker: Option<PotentialTracker>,
    cursor: Cursor,
}

impl AvoiderPotential {
    pub fn new(a: usize) -> Self {
        AvoiderPotential {
            a,
            tracker: None,
            cursor: Cursor::default(),
        }
    }

    pub fn tracker(&self) -> Option<&PotentialTracker> {
        self.tracker.as_ref()
    }

    fn base(&self) -> f64 {
        1.0 + 1.0 / self.a as f64
    }

    /// Picks `k` elements for the claimer from a synced tracker.
    pub(crate) fn pick(t: &PotentialTracker, state: &BoardState, k: usize) -> Vec<EdgeId> {
        let mut t = t.clone();
        let mut out = Vec::with_capacity(k);
        for _ in 0..k {
            match best_free(&t, state, false, |x| t.claim_gain(x)) {
                Some(x) => {
                    t.claim(x);
                    out.push(x);
                }
                None => break,
            }
        }
        out
    }
}

impl Strategy for AvoiderPotential {
    fn name(&self) -> &str {
        "avoider-potential"
    }

    fn params(&self) -> Params {
        crate::game::params([("a", json!(self.a))])
    }

    fn choose(&mut self, state: &BoardState, _rng: &mut GameRng) -> Result<Vec<EdgeId>, Forfeit> {
        let me = state.to_move();
        let base = self.base();
        sync(&mut self.tracker, &mut self.cursor, state, base, me.other())?;
        let (k, _) = state.claim_bounds(me);
        let t = self.tracker.as_ref().expect("synced");
        Ok(Self::pick(t, state, k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(ground: usize, sets: Vec<Vec<usize>>) -> Hypergraph {
        Hypergraph::new(ground, sets).unwrap()
    }

    #[test]
    fn criteria_examples() {
        let c = beck_criterion(&h(3, vec![vec![0, 1, 2]]), 1, 1);
        assert!(c.satisfied && (c.sum - 0.125).abs() < 1e-15);
        let c = beck_criterion(&h(2, vec![vec![0], vec![1]]), 1, 1);
        assert!(!c.satisfied && (c.sum - 1.0).abs() < 1e-15);
        let c = beck_criterion(&h(4, vec![vec![0, 1], vec![2, 3]]), 1, 1);
        assert!(!c.satisfied && (c.sum - 0.5).abs() < 1e-15);
        let c = beck_criterion(&h(4, vec![vec![0, 1], vec![2, 3]]), 1, 2);
        assert!(c.satisfied && (c.sum - 2.0 / 9.0).abs() < 1e-15);
        assert!(beck_criterion(&h(0, vec![]), 1, 1).satisfied);

        let c = avoider_criterion(&h(4, vec![vec![0, 1, 2, 3]]), 1, 1);
        assert!(c.satisfied && (c.sum - 1.0 / 16.0).abs() < 1e-15);
        let c = avoider_criterion(&h(2, vec![vec![0], vec![1]]), 1, 5);
        assert!(!c.satisfied && c.sum == 1.0);
        assert!(avoider_criterion(&h(0, vec![]), 2, 1).satisfied);
    }

    #[test]
    fn kahan_path_matches_plain_sum() {
        let sets: Vec<Vec<usize>> = (0..100_001).map(|i| vec![i % 7, 7 + i % 5]).collect();
        let hg = h(12, sets);
        let c = beck_criterion(&hg, 1, 1);
        assert!((c.sum - 100_001.0 / 4.0).abs() < 1e-9);
    }

    #[test]
    fn tracker_incremental_matches_scratch() {
        let hg = h(8, vec![vec![0, 1, 2], vec![2, 3], vec![4, 5, 6, 7], vec![1, 5]]);
        let mut t = PotentialTracker::new(hg, 3.0);
        for (x, kill) in [(2, false), (5, true), (0, false), (7, false), (3, true), (1, false)] {
            if kill {
                t.kill(x)
            } else {
                t.claim(x)
            }
            let s = t.from_scratch();
            assert!((t.potential() - s).abs() <= 1e-12 * s.max(1e-300), "{} vs {s}", t.potential());
        }
    }
}
