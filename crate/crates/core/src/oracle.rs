//! Exact game values on tiny boards.
//!
//! The search works one element at a time: a mover claims single elements
//! until its turn is complete. Under exact (Maker-Breaker) biases a turn ends
//! after `bias` elements; under at-least (Avoider-Enforcer) biases the mover
//! may also stop any time after `bias` elements, so every legal claim size
//! is covered. Positions are memoized on (Maker mask, Breaker mask, mover,
//! elements claimed this turn).
//!
//! Both win conditions are monotone, so the search stops as soon as the
//! Maker/Avoider graph has the target or can no longer get it.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::game::{BoardState, Convention, GameSpec, Move, Role, SpecError, Strategy, Target};
use crate::graph::{EdgeId, Graph};
use crate::props::connectivity::{is_connected, is_k_connected};
use crate::props::hamilton::is_hamiltonian;
use crate::props::matching::has_perfect_matching;
use crate::rng::{mix64, stream};

/// Largest board the exact solvers accept.
pub const MAX_ORACLE_EDGES: usize = 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("board has {edges} edges; exact search is limited to {limit}")]
    TooLarge { edges: usize, limit: usize },
    #[error(transparent)]
    Spec(#[from] SpecError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub winner: Role,
    /// A line of optimal play, as whole moves, ending in a decided position.
    pub principal_variation: Vec<Move>,
    pub states_explored: u64,
}

/// Property tests on edge subsets, cached by mask.
struct Evaluator<'a> {
    g: &'a Graph,
    target: &'a Target,
    all: u64,
    set_masks: Vec<u64>,
    cache: HashMap<u64, bool>,
}

impl<'a> Evaluator<'a> {
    fn new(g: &'a Graph, target: &'a Target) -> Self {
        let m = g.edge_count();
        let set_masks = match target {
            Target::ExplicitHypergraph(h) => h
                .sets()
                .iter()
                .map(|s| s.iter().fold(0u64, |acc, &x| acc | 1 << x))
                .collect(),
            _ => Vec::new(),
        };
        Evaluator {
            g,
            target,
            all: if m == 64 { u64::MAX } else { (1u64 << m) - 1 },
            set_masks,
            cache: HashMap::new(),
        }
    }

    /// Does the graph of the edges in `mask` have the target property?
    fn has(&mut self, mask: u64) -> bool {
        if let Target::ExplicitHypergraph(_) = self.target {
            return self.set_masks.iter().any(|&s| s & mask == s);
        }
        if let Some(&v) = self.cache.get(&mask) {
            return v;
        }
        let sub = self
            .g
            .spanning_subgraph((0..self.g.edge_count()).filter(|&e| mask >> e & 1 == 1));
        let v = match self.target {
            Target::Connectivity => is_connected(&sub),
            Target::PerfectMatching => has_perfect_matching(&sub),
            Target::Hamiltonicity => is_hamiltonian(&sub),
            Target::KConnectivity(k) => is_k_connected(&sub, *k),
            Target::MinDegree(c) => sub.min_degree() >= *c,
            Target::IsolateVertex => sub.min_degree() >= 1,
            Target::ExplicitHypergraph(_) => unreachable!(),
        };
        self.cache.insert(mask, v);
        v
    }

    /// Winner if the position is decided.
    fn decided(&mut self, conv: Convention, maker: u64, breaker: u64) -> Option<Role> {
        let maker_side_has = if self.has(maker) {
            true
        } else if !self.has(self.all & !breaker) {
            false
        } else {
            return None;
        };
        Some(match (conv, maker_side_has) {
            (Convention::MakerBreaker, true) => Role::Maker,
            (Convention::MakerBreaker, false) => Role::Breaker,
            (Convention::AvoiderEnforcerMonotone, true) => Role::ENFORCER,
            (Convention::AvoiderEnforcerMonotone, false) => Role::AVOIDER,
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Key {
    maker: u64,
    breaker: u64,
    mover: Role,
    count: u8,
}

#[derive(Clone, Copy)]
enum Step {
    Claim(EdgeId),
    Pass,
}

struct Search<'a> {
    spec: &'a GameSpec,
    eval: Evaluator<'a>,
    memo: HashMap<Key, Role>,
    explored: u64,
}

impl<'a> Search<'a> {
    fn steps(&self, k: Key) -> Vec<Step> {
        let bias = self.spec.bias(k.mover);
        let free = self.eval.all & !(k.maker | k.breaker);
        let mut out = Vec::new();
        if self.spec.convention == Convention::AvoiderEnforcerMonotone && k.count as usize >= bias {
            out.push(Step::Pass);
        }
        let mut f = free;
        while f != 0 {
            let e = f.trailing_zeros() as usize;
            f &= f - 1;
            out.push(Step::Claim(e));
        }
        out
    }

    fn child(&self, k: Key, s: Step) -> Key {
        let bias = self.spec.bias(k.mover);
        match s {
            Step::Pass => Key {
                mover: k.mover.other(),
                count: 0,
                ..k
            },
            Step::Claim(e) => {
                let (mut maker, mut breaker) = (k.maker, k.breaker);
                match k.mover {
                    Role::Maker => maker |= 1 << e,
                    Role::Breaker => breaker |= 1 << e,
                }
                let count = k.count as usize + 1;
                let ends = self.spec.convention == Convention::MakerBreaker && count >= bias;
                if ends {
                    Key {
                        maker,
                        breaker,
                        mover: k.mover.other(),
                        count: 0,
                    }
                } else {
                    Key {
                        maker,
                        breaker,
                        mover: k.mover,
                        count: count.min(bias) as u8,
                    }
                }
            }
        }
    }

    fn value(&mut self, k: Key) -> Role {
        if let Some(w) = self.eval.decided(self.spec.convention, k.maker, k.breaker) {
            return w;
        }
        if let Some(&w) = self.memo.get(&k) {
            return w;
        }
        self.explored += 1;
        let mut result = k.mover.other();
        for s in self.steps(k) {
            let c = self.child(k, s);
            if self.value(c) == k.mover {
                result = k.mover;
                break;
            }
        }
        self.memo.insert(k, result);
        result
    }

    fn principal_variation(&mut self, mut k: Key) -> Vec<(Role, Option<EdgeId>)> {
        let mut line = Vec::new();
        while self.eval.decided(self.spec.convention, k.maker, k.breaker).is_none() {
            let want = self.value(k);
            let mut next = None;
            for s in self.steps(k) {
                let c = self.child(k, s);
                if self.value(c) == want {
                    next = Some((s, c));
                    break;
                }
            }
            let (s, c) = next.expect("a move realizes the value");
            line.push((
                k.mover,
                match s {
                    Step::Claim(e) => Some(e),
                    Step::Pass => None,
                },
            ));
            k = c;
        }
        line
    }
}

fn check_size(spec: &GameSpec, g: &Arc<Graph>) -> Result<(), OracleError> {
    if g.edge_count() > MAX_ORACLE_EDGES {
        return Err(OracleError::TooLarge {
            edges: g.edge_count(),
            limit: MAX_ORACLE_EDGES,
        });
    }
    BoardState::new(spec.clone(), g.clone())?;
    Ok(())
}

fn root(spec: &GameSpec) -> Key {
    Key {
        maker: 0,
        breaker: 0,
        mover: spec.first_player,
        count: 0,
    }
}

/// Winner under optimal play by both sides, with a principal variation.
pub fn solve_exact(spec: &GameSpec, g: &Arc<Graph>) -> Result<SolveResult, OracleError> {
    check_size(spec, g)?;
    let mut s = Search {
        spec,
        eval: Evaluator::new(g, &spec.target),
        memo: HashMap::new(),
        explored: 0,
    };
    let winner = s.value(root(spec));
    let line = s.principal_variation(root(spec));
    let explored = s.explored;
    let principal_variation = to_moves(spec, g, &line)?;
    Ok(SolveResult {
        winner,
        principal_variation,
        states_explored: explored,
    })
}

/// Groups single-element steps into engine moves and completes the line
/// with lowest-id claims until the engine also sees the game as decided.
fn to_moves(spec: &GameSpec, g: &Arc<Graph>, line: &[(Role, Option<EdgeId>)]) -> Result<Vec<Move>, OracleError> {
    let mut moves: Vec<Move> = Vec::new();
    let mut current: Option<Move> = None;
    let mut cur_turn_role = spec.first_player;
    for &(role, step) in line {
        if role != cur_turn_role {
            if let Some(m) = current.take() {
                moves.push(m);
            }
            cur_turn_role = role;
        }
        match step {
            Some(e) => current.get_or_insert_with(|| Move { role, edges: Vec::new() }).edges.push(e),
            None => {
                moves.push(current.take().unwrap_or(Move { role, edges: Vec::new() }));
                cur_turn_role = role.other();
            }
        }
    }
    let mut state = BoardState::new(spec.clone(), g.clone())?;
    let mut out = Vec::new();
    for m in moves {
        state.apply_claim(m.role, &m.edges).expect("oracle line is legal");
        out.push(m);
    }
    if let Some(mut m) = current {
        let (lo, _) = state.claim_bounds(m.role);
        let pad: Vec<EdgeId> = state.free_edges().filter(|e| !m.edges.contains(e)).collect();
        let need = lo.saturating_sub(m.edges.len());
        m.edges.extend(pad.into_iter().take(need));
        state.apply_claim(m.role, &m.edges).expect("padded move is legal");
        out.push(m);
    }
    while !state.is_over() {
        let who = state.to_move();
        let (lo, _) = state.claim_bounds(who);
        let edges: Vec<EdgeId> = state.free_edges().take(lo).collect();
        state.apply_claim(who, &edges).expect("filler move is legal");
        out.push(Move { role: who, edges });
    }
    Ok(out)
}

/// The same game value by plain recursion over whole turns, without a
/// transposition table. Every legal claim set is enumerated, so this is an
/// independent check of [`solve_exact`] on very small boards.
pub fn solve_exact_plain(spec: &GameSpec, g: &Arc<Graph>) -> Result<Role, OracleError> {
    check_size(spec, g)?;
    let mut eval = Evaluator::new(g, &spec.target);
    Ok(plain(spec, &mut eval, 0, 0, spec.first_player))
}

fn plain(spec: &GameSpec, eval: &mut Evaluator, maker: u64, breaker: u64, mover: Role) -> Role {
    if let Some(w) = eval.decided(spec.convention, maker, breaker) {
        return w;
    }
    let free = eval.all & !(maker | breaker);
    let elems: Vec<usize> = (0..64).filter(|&e| free >> e & 1 == 1).collect();
    let bias = spec.bias(mover).min(elems.len());
    let sizes: Vec<usize> = match spec.convention {
        Convention::MakerBreaker => vec![bias],
        Convention::AvoiderEnforcerMonotone => (bias..=elems.len()).collect(),
    };
    for k in sizes {
        let mut found = false;
        for_each_subset(&elems, k, &mut |sub| {
            let add = sub.iter().fold(0u64, |a, &e| a | 1 << e);
            let (m, b) = match mover {
                Role::Maker => (maker | add, breaker),
                Role::Breaker => (maker, breaker | add),
            };
            if plain(spec, eval, m, b, mover.other()) == mover {
                found = true;
            }
            found
        });
        if found {
            return mover;
        }
    }
    mover.other()
}

/// Calls `f` on each k-subset until it returns true.
fn for_each_subset(items: &[usize], k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            if rec(items, k, i + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), f);
}

/// Builds a fresh instance of a fixed strategy.
pub type StrategyFactory<'a> = &'a dyn Fn() -> Box<dyn Strategy>;

/// Winner when `side` plays `fixed` and the other side plays optimally.
///
/// At each of `side`'s turns a fresh strategy instance is handed the current
/// position (with its full history) and a random stream pinned to `seed` and
/// the position, so the fixed side's choice is a function of the position.
/// An illegal claim or a forfeit by the fixed side loses.
pub fn best_response_value(
    spec: &GameSpec,
    g: &Arc<Graph>,
    fixed: StrategyFactory,
    side: Role,
    seed: u64,
) -> Result<Role, OracleError> {
    check_size(spec, g)?;
    let state = BoardState::new(spec.clone(), g.clone())?;
    let mut br = BestResponse {
        spec,
        eval: Evaluator::new(g, &spec.target),
        memo: HashMap::new(),
        fixed,
        side,
        seed,
    };
    Ok(br.value(&state, 0, 0))
}

struct BestResponse<'a> {
    spec: &'a GameSpec,
    eval: Evaluator<'a>,
    memo: HashMap<Key, Role>,
    fixed: StrategyFactory<'a>,
    side: Role,
    seed: u64,
}

fn masks(state: &BoardState) -> (u64, u64) {
    let (mut m, mut b) = (0u64, 0u64);
    for e in state.owned_by(Role::Maker) {
        m |= 1 << e;
    }
    for e in state.owned_by(Role::Breaker) {
        b |= 1 << e;
    }
    (m, b)
}

impl BestResponse<'_> {
    /// `pending` holds the adversary's partial claim this turn.
    fn value(&mut self, state: &BoardState, pending: u64, count: usize) -> Role {
        let (m0, b0) = masks(state);
        let mover = state.to_move();
        let (maker, breaker) = match mover {
            Role::Maker => (m0 | pending, b0),
            Role::Breaker => (m0, b0 | pending),
        };
        if let Some(w) = self.eval.decided(self.spec.convention, maker, breaker) {
            return w;
        }
        if let Some((w, _)) = state.outcome() {
            return w;
        }
        let bias = self.spec.bias(mover);
        let key = Key {
            maker,
            breaker,
            mover,
            count: count.min(bias) as u8,
        };
        if let Some(&w) = self.memo.get(&key) {
            return w;
        }
        let result = if mover == self.side {
            let mut strat = (self.fixed)();
            let mut rng = stream(mix64(self.seed, maker ^ breaker.rotate_left(32)), mover as u64);
            match strat.choose(state, &mut rng) {
                Ok(claim) => match state.applied(mover, &claim) {
                    Ok(next) => self.value(&next, 0, 0),
                    Err(_) => mover.other(),
                },
                Err(_) => mover.other(),
            }
        } else {
            self.adversary(state, pending, count, mover)
        };
        self.memo.insert(key, result);
        result
    }

    fn adversary(&mut self, state: &BoardState, pending: u64, count: usize, mover: Role) -> Role {
        let bias = self.spec.bias(mover);
        let free: Vec<EdgeId> = state.free_edges().filter(|&e| pending >> e & 1 == 0).collect();
        let finish = |this: &mut Self, p: u64| -> Role {
            let edges: Vec<EdgeId> = (0..64).filter(|&e| p >> e & 1 == 1).collect();
            match state.applied(mover, &edges) {
                Ok(next) => this.value(&next, 0, 0),
                Err(_) => mover.other(),
            }
        };
        if free.is_empty() {
            return finish(self, pending);
        }
        let ae = self.spec.convention == Convention::AvoiderEnforcerMonotone;
        if ae && count >= bias && finish(self, pending) == mover {
            return mover;
        }
        for e in free {
            let p = pending | 1 << e;
            let w = if !ae && count + 1 >= bias {
                finish(self, p)
            } else {
                self.value(state, p, count + 1)
            };
            if w == mover {
                return mover;
            }
        }
        mover.other()
    }
}
