//! Avoider's isolation strategy: keep a sparse vertex set `U` untouched,
//! dump everything else in the first move, then play the reverse box game
//! on the triplet stars of `U` as its Enforcer.

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::boxes::{enforcer_rbox_strategy, RBoxRole, RBoxState};
use crate::game::{params, BoardState, Forfeit, Params, Role, Strategy};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::rng::GameRng;

use super::Pending;

/// Random subsets tried when the greedy set is too dense.
pub const RANDOM_RETRIES: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AvoiderPlan {
    pub u: Vec<Vertex>,
    pub triplets: Vec<[Vertex; 3]>,
    /// e(U) on the board.
    pub inner_edges: usize,
    /// The sparsity bound `np / (2 ln n)` the set had to meet.
    pub sparsity_bound: f64,
    /// Found by the random retries rather than the greedy pass.
    pub from_retry: bool,
}

/// `3⌊√(n/ln n)/3⌋`, at least 3 and at most `n` rounded down to a multiple
/// of 3.
pub fn sparse_set_size(n: usize) -> usize {
    let l = (n.max(2) as f64).ln();
    let s = 3 * (((n as f64 / l).sqrt() / 3.0).floor() as usize);
    s.max(3).min(n - n % 3)
}

fn inner_edges(g: &Graph, u: &[Vertex]) -> usize {
    g.edges_within(u).expect("valid vertices")
}

/// Chooses `U`: lowest-degree-first greedy minimizing `e(U)`, then random
/// retries. `None` if no candidate meets the sparsity bound.
pub fn plan_sparse_set(g: &Graph, rng: &mut GameRng) -> Result<AvoiderPlan, AvoiderPlan> {
    let n = g.n();
    let size = sparse_set_size(n);
    let np = 2.0 * g.edge_count() as f64 / n.max(1) as f64;
    let bound = np / (2.0 * (n.max(2) as f64).ln());
    let mut in_u = vec![false; n];
    let mut u = Vec::with_capacity(size);
    let mut to_u = vec![0usize; n];
    while u.len() < size {
        let v = (0..n)
            .filter(|&v| !in_u[v])
            .min_by_key(|&v| (to_u[v], g.degree(v), v))
            .expect("size <= n");
        in_u[v] = true;
        u.push(v);
        for w in g.neighbors(v) {
            to_u[w] += 1;
        }
    }
    let mut best = (inner_edges(g, &u), u, false);
    if (best.0 as f64) > bound {
        for _ in 0..RANDOM_RETRIES {
            let cand: Vec<Vertex> = sample(rng, n, size).into_vec();
            let e = inner_edges(g, &cand);
            if e < best.0 {
                best = (e, cand, true);
            }
        }
    }
    let (e, mut u, from_retry) = best;
    u.sort_unstable();
    let plan = AvoiderPlan {
        triplets: u.chunks(3).map(|c| [c[0], c[1], c[2]]).collect(),
        u,
        inner_edges: e,
        sparsity_bound: bound,
        from_retry,
    };
    if (e as f64) <= bound {
        Ok(plan)
    } else {
        Err(plan)
    }
}

#[derive(Debug, Clone)]
pub struct AvoiderIsolator {
    b: usize,
    plan: Option<AvoiderPlan>,
    /// Box index of every edge leaving `U`; `usize::MAX` otherwise.
    box_of: Vec<usize>,
    in_u: Vec<bool>,
    boxes: Vec<Vec<EdgeId>>,
}

/// Avoider's isolator against Enforcer bias `b`.
pub fn avoider_isolator(b: usize) -> AvoiderIsolator {
    AvoiderIsolator {
        b,
        plan: None,
        box_of: Vec::new(),
        in_u: Vec::new(),
        boxes: Vec::new(),
    }
}

impl AvoiderIsolator {
    pub fn plan(&self) -> Option<&AvoiderPlan> {
        self.plan.as_ref()
    }

    fn prepare(&mut self, g: &Graph, rng: &mut GameRng) -> Result<(), Forfeit> {
        let plan = plan_sparse_set(g, rng).map_err(|p| {
            Forfeit(format!(
                "no sparse set: best e(U)={} exceeds {:.3} for |U|={}",
                p.inner_edges,
                p.sparsity_bound,
                p.u.len()
            ))
        })?;
        let n = g.n();
        self.in_u = vec![false; n];
        for &v in &plan.u {
            self.in_u[v] = true;
        }
        let mut trip = vec![usize::MAX; n];
        for (i, t) in plan.triplets.iter().enumerate() {
            for &v in t {
                trip[v] = i;
            }
        }
        self.box_of = vec![usize::MAX; g.edge_count()];
        self.boxes = vec![Vec::new(); plan.triplets.len()];
        for (id, e) in g.edges().iter().enumerate() {
            let (a, b) = (e.u(), e.v());
            if self.in_u[a] != self.in_u[b] {
                let i = if self.in_u[a] { trip[a] } else { trip[b] };
                self.box_of[id] = i;
                self.boxes[i].push(id);
            }
        }
        self.plan = Some(plan);
        Ok(())
    }

    /// Does edge `e` have both ends in `U`?
    pub fn inside_u(&self, g: &Graph, e: EdgeId) -> bool {
        let ed = g.edge(e);
        self.in_u.get(ed.u()).copied().unwrap_or(false) && self.in_u[ed.v()]
    }
}

impl Strategy for AvoiderIsolator {
    fn name(&self) -> &str {
        "avoider-isolator"
    }

    fn params(&self) -> Params {
        let mut p = params([("b", json!(self.b))]);
        if let Some(plan) = &self.plan {
            p.insert("u".into(), json!(plan.u));
        }
        p
    }

    fn choose(&mut self, state: &BoardState, rng: &mut GameRng) -> Result<Vec<EdgeId>, Forfeit> {
        let g = state.board();
        if state.moves_by(Role::Maker) == 0 || self.plan.is_none() {
            self.prepare(g, rng)?;
        }
        let (k, _) = state.claim_bounds(state.to_move());
        let mut pending = Pending::new(state);
        if state.moves_by(Role::Maker) == 0 {
            let outside: Vec<EdgeId> = state
                .free_edges()
                .filter(|&e| {
                    let ed = g.edge(e);
                    !self.in_u[ed.u()] && !self.in_u[ed.v()]
                })
                .collect();
            for e in outside {
                pending.take(state, e);
            }
        } else {
            // Stray edges away from U first (only if the board had no first move for us).
            let stray: Vec<EdgeId> = state
                .free_edges()
                .filter(|&e| {
                    let ed = g.edge(e);
                    !self.in_u[ed.u()] && !self.in_u[ed.v()]
                })
                .take(k)
                .collect();
            for e in stray {
                pending.take(state, e);
            }
        }
        if pending.edges.len() < k {
            let nb = self.boxes.len();
            let mut s = RBoxState {
                sizes: self.boxes.iter().map(Vec::len).collect(),
                avoider: vec![0; nb],
                enforcer: vec![0; nb],
                p: 1,
                q: 1,
                to_move: RBoxRole::Enforcer,
            };
            for (i, bx) in self.boxes.iter().enumerate() {
                for &e in bx {
                    match state.owner(e) {
                        crate::game::Owner::Breaker => s.avoider[i] += 1,
                        crate::game::Owner::Maker => s.enforcer[i] += 1,
                        crate::game::Owner::Free => {}
                    }
                }
            }
            let want = (k - pending.edges.len()).min(s.total_free());
            if want > 0 {
                s.q = want;
                for i in enforcer_rbox_strategy(&s) {
                    let e = self.boxes[i]
                        .iter()
                        .copied()
                        .find(|&e| pending.is_free(state, e))
                        .expect("box has a free element");
                    pending.take(state, e);
                }
            }
        }
        if pending.edges.len() < k {
            // Forced into U.
            let inner: Vec<EdgeId> = pending.free_edges(state).take(k - pending.edges.len()).collect();
            for e in inner {
                pending.take(state, e);
            }
        }
        Ok(pending.edges)
    }
}
