//! Playing a (1,b') game with a strategy built for the (1,b) game.
//!
//! The wrapper keeps a private (1,b) game in which the opponent's every move
//! is topped up to `b` elements with phantom claims: the lowest-id elements
//! that are free in the private game. Phantoms never reach the real board.
//! The inner strategy only ever sees the private game, so each of its claims
//! is free on the real board too.

use serde_json::json;

use crate::graph::EdgeId;
use crate::rng::GameRng;

use super::board::BoardState;
use super::spec::Role;
use super::strategy::{Cursor, Forfeit, Params, Strategy};

pub struct FakeMoves<S> {
    inner: S,
    b: usize,
    b_prime: usize,
    shadow: Option<BoardState>,
    cursor: Cursor,
    name: String,
    /// Own moves made after the private game ended.
    overflow: usize,
}

/// Wraps a Maker strategy for bias (1,b) to play bias (1,b'), `b' < b`.
pub fn fake_moves_wrapper<S: Strategy>(inner: S, b: usize, b_prime: usize) -> Result<FakeMoves<S>, String> {
    if b_prime == 0 || b_prime >= b {
        return Err(format!("fake moves need 1 <= b' < b (got b={b}, b'={b_prime})"));
    }
    let name = format!("fake-moves({})", inner.name());
    Ok(FakeMoves {
        inner,
        b,
        b_prime,
        shadow: None,
        cursor: Cursor::default(),
        name,
        overflow: 0,
    })
}

impl<S: Strategy> FakeMoves<S> {
    pub fn inner(&self) -> &S {
        &self.inner
    }

    /// The private (1,b) game, if it has started.
    pub fn shadow(&self) -> Option<&BoardState> {
        self.shadow.as_ref()
    }

    /// Own moves made with the fallback rule after the private game ended.
    pub fn overflow_moves(&self) -> usize {
        self.overflow
    }

    fn sync(&mut self, state: &BoardState) -> Result<(), Forfeit> {
        let (fresh, restarted) = self.cursor.fresh(state);
        if restarted || self.shadow.is_none() {
            let mut spec = state.spec().clone();
            spec.bias_b = self.b;
            let s = BoardState::new(spec, state.board_arc().clone()).map_err(|e| Forfeit(e.to_string()))?;
            self.shadow = Some(s);
            self.overflow = 0;
            // Replay everything seen so far.
            let all = state.history().to_vec();
            return self.feed(&all);
        }
        let fresh = fresh.to_vec();
        self.feed(&fresh)
    }

    fn feed(&mut self, moves: &[super::board::Move]) -> Result<(), Forfeit> {
        let shadow = self.shadow.as_mut().expect("shadow exists");
        for mv in moves {
            if shadow.is_over() {
                return Ok(());
            }
            let claim: Vec<EdgeId> = match mv.role {
                Role::Maker => mv.edges.clone(),
                Role::Breaker => {
                    let mut c: Vec<EdgeId> = mv.edges.iter().copied().filter(|&e| shadow.is_free(e)).collect();
                    let want = self.b.min(shadow.free_count());
                    if c.len() < want {
                        let extra: Vec<EdgeId> = shadow
                            .free_edges()
                            .filter(|e| !c.contains(e))
                            .take(want - c.len())
                            .collect();
                        c.extend(extra);
                    }
                    c
                }
            };
            if shadow.to_move() != mv.role {
                // Only possible after a move we could not mirror.
                return Err(Forfeit("private game out of step".into()));
            }
            shadow
                .apply_claim(mv.role, &claim)
                .map_err(|e| Forfeit(format!("private game rejected a move: {e}")))?;
        }
        Ok(())
    }
}

impl<S: Strategy> Strategy for FakeMoves<S> {
    fn name(&self) -> &str {
        &self.name
    }

    fn params(&self) -> Params {
        let mut p = self.inner.params();
        p.insert("b".into(), json!(self.b));
        p.insert("b_prime".into(), json!(self.b_prime));
        p
    }

    fn choose(&mut self, state: &BoardState, rng: &mut GameRng) -> Result<Vec<EdgeId>, Forfeit> {
        if state.to_move() != Role::Maker {
            return Err(Forfeit("fake-moves wrapper only plays Maker".into()));
        }
        self.sync(state)?;
        let shadow = self.shadow.as_ref().expect("synced");
        if !shadow.is_over() && shadow.to_move() == Role::Maker {
            // Mirrored into the private game from the real history next time.
            return self.inner.choose(shadow, rng);
        }
        self.overflow += 1;
        let (k, _) = state.claim_bounds(Role::Maker);
        Ok(state.free_edges().take(k).collect())
    }
}
