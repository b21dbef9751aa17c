//! The strategy interface and two baseline strategies.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use serde_json::Value;

use crate::graph::EdgeId;
use crate::rng::GameRng;

use super::board::{BoardState, Move};

/// Named parameters recorded with every trial.
pub type Params = BTreeMap<String, Value>;

/// A strategy gives up; the engine records a forfeit loss.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forfeit(pub String);

impl std::fmt::Display for Forfeit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// A player. The engine only calls `choose` when it is this player's turn;
/// the returned claim must be legal for [`BoardState::apply_claim`].
pub trait Strategy: Send {
    /// Stable identifier used in records and on the command line.
    fn name(&self) -> &str;

    fn params(&self) -> Params {
        Params::new()
    }

    fn choose(&mut self, state: &BoardState, rng: &mut GameRng) -> Result<Vec<EdgeId>, Forfeit>;
}

impl<S: Strategy + ?Sized> Strategy for Box<S> {
    fn name(&self) -> &str {
        (**self).name()
    }

    fn params(&self) -> Params {
        (**self).params()
    }

    fn choose(&mut self, state: &BoardState, rng: &mut GameRng) -> Result<Vec<EdgeId>, Forfeit> {
        (**self).choose(state, rng)
    }
}

/// Builds a [`Params`] map from `(key, value)` pairs.
pub fn params<const N: usize>(pairs: [(&str, Value); N]) -> Params {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Tracks which moves of a game a strategy has already consumed.
#[derive(Debug, Default, Clone)]
pub struct Cursor {
    seen: usize,
}

impl Cursor {
    /// Moves made since the last call. Restarts if the history got shorter
    /// (a new game with the same instance).
    pub fn fresh<'s>(&mut self, state: &'s BoardState) -> (&'s [Move], bool) {
        let h = state.history();
        let restarted = h.len() < self.seen;
        if restarted {
            self.seen = 0;
        }
        let new = &h[self.seen..];
        self.seen = h.len();
        (new, restarted)
    }
}

/// Claims the minimum legal number of uniformly random free edges.
#[derive(Debug, Default, Clone)]
pub struct RandomStrategy;

impl Strategy for RandomStrategy {
    fn name(&self) -> &str {
        "random"
    }

    fn choose(&mut self, state: &BoardState, rng: &mut GameRng) -> Result<Vec<EdgeId>, Forfeit> {
        let free: Vec<EdgeId> = state.free_edges().collect();
        let (k, _) = state.claim_bounds(state.to_move());
        Ok(random_subset(&free, k, rng))
    }
}

/// `k` distinct elements of `pool`, uniformly.
pub fn random_subset(pool: &[EdgeId], k: usize, rng: &mut GameRng) -> Vec<EdgeId> {
    let k = k.min(pool.len());
    sample(rng, pool.len(), k).into_iter().map(|i| pool[i]).collect()
}

/// Claims the lowest-id free edges; deterministic, useful in tests.
#[derive(Debug, Default, Clone)]
pub struct GreedyLowest;

impl Strategy for GreedyLowest {
    fn name(&self) -> &str {
        "lowest"
    }

    fn choose(&mut self, state: &BoardState, _rng: &mut GameRng) -> Result<Vec<EdgeId>, Forfeit> {
        let (k, _) = state.claim_bounds(state.to_move());
        Ok(state.free_edges().take(k).collect())
    }
}

/// Plays a fixed list of claims, then forfeits.
#[derive(Debug, Clone)]
pub struct Scripted {
    moves: Vec<Vec<EdgeId>>,
    next: usize,
}

impl Scripted {
    pub fn new(moves: Vec<Vec<EdgeId>>) -> Self {
        Scripted { moves, next: 0 }
    }
}

impl Strategy for Scripted {
    fn name(&self) -> &str {
        "scripted"
    }

    fn choose(&mut self, _state: &BoardState, _rng: &mut GameRng) -> Result<Vec<EdgeId>, Forfeit> {
        let m = self
            .moves
            .get(self.next)
            .cloned()
            .ok_or_else(|| Forfeit("script exhausted".into()))?;
        self.next += 1;
        Ok(m)
    }
}
