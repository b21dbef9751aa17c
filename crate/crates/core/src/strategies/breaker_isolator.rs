//! Breaker's isolation strategy: grow a Maker-free clique-like set `C` whose
//! inner edges all belong to Breaker, then play BoxMaker on the stars of `C`.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::boxes::{boxmaker_strategy, BoxState};
use crate::game::{params, BoardState, Forfeit, Params, Role, Strategy};
use crate::graph::{EdgeId, Vertex};
use crate::rng::GameRng;

use super::Pending;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IsolatorStage {
    /// Growing `C`.
    Building,
    /// BoxMaker on the stars `A_v`, `v ∈ C`.
    Boxes,
}

#[derive(Debug, Clone)]
pub struct BreakerIsolator {
    b: usize,
    eps: f64,
    c_target: Option<usize>,
    c: Vec<Vertex>,
    stage: IsolatorStage,
}

/// Breaker's isolator for bias `b`. The `C` target defaults to
/// `max(4, ⌊n/ln²n⌋)`.
pub fn breaker_isolator(b: usize, eps: f64, c_target: Option<usize>) -> BreakerIsolator {
    BreakerIsolator {
        b,
        eps,
        c_target,
        c: Vec::new(),
        stage: IsolatorStage::Building,
    }
}

pub fn default_c_target(n: usize) -> usize {
    let l = (n.max(2) as f64).ln();
    ((n as f64 / (l * l)).floor() as usize).max(4)
}

impl BreakerIsolator {
    pub fn stage(&self) -> IsolatorStage {
        self.stage
    }

    pub fn c_set(&self) -> &[Vertex] {
        &self.c
    }

    fn target(&self, n: usize) -> usize {
        self.c_target.unwrap_or_else(|| default_c_target(n)).min(n)
    }

    /// `(1+ε/2)·np`, with np estimated by the board's average degree.
    pub fn degree_cap(&self, state: &BoardState) -> f64 {
        let g = state.board();
        let avg = 2.0 * g.edge_count() as f64 / g.n().max(1) as f64;
        (1.0 + self.eps / 2.0) * avg
    }

    /// The Stage I conditions on `C`: every board edge inside `C` is
    /// Breaker's, Maker has no edge at `C`, and degrees are capped.
    pub fn check_invariants(&self, state: &BoardState) -> Result<(), String> {
        let g = state.board();
        let cap = self.degree_cap(state);
        for (i, &v) in self.c.iter().enumerate() {
            if state.d_maker(v) != 0 {
                return Err(format!("Maker owns an edge at {v} in C"));
            }
            if g.degree(v) as f64 > cap {
                return Err(format!("vertex {v} in C has degree {} > {cap:.2}", g.degree(v)));
            }
            for &w in &self.c[..i] {
                if let Some(e) = g.edge_id(v, w) {
                    if state.owner(e) != crate::game::Owner::Breaker {
                        return Err(format!("edge {v}-{w} inside C is not Breaker's"));
                    }
                }
            }
        }
        Ok(())
    }

    fn build(&mut self, state: &BoardState, pending: &mut Pending, k: usize) -> Result<(), Forfeit> {
        let g = state.board();
        let n = g.n();
        self.c.retain(|&v| state.d_maker(v) == 0);
        let mut in_c = vec![false; n];
        for &v in &self.c {
            in_c[v] = true;
        }
        let cap = self.degree_cap(state);
        let cost = |x: Vertex| g.incidences(x).filter(|&(w, e)| in_c[w] && state.is_free(e)).count();
        let mut cands: Vec<(usize, usize, Vertex)> = (0..n)
            .filter(|&x| !in_c[x] && state.d_maker(x) == 0 && g.degree(x) as f64 <= cap)
            .map(|x| (cost(x), g.degree(x), x))
            .filter(|&(c, _, _)| 2 * c <= self.b)
            .collect();
        cands.sort_unstable();
        let mut pair = None;
        'outer: for (i, &(cu, _, u)) in cands.iter().enumerate().take(64) {
            for &(cv, _, v) in &cands[i + 1..] {
                let uv = g.edge_id(u, v).map_or(0, |e| usize::from(state.is_free(e)));
                if cu + cv + uv <= k {
                    pair = Some((u, v));
                    break 'outer;
                }
            }
        }
        let (u, v) = pair.ok_or_else(|| {
            Forfeit(format!(
                "isolator stalled with |C|={}: no two Maker-free vertices fit bias {}",
                self.c.len(),
                self.b
            ))
        })?;
        for x in [u, v] {
            in_c[x] = true;
            self.c.push(x);
        }
        for x in [u, v] {
            for (w, e) in g.incidences(x) {
                if in_c[w] && pending.is_free(state, e) {
                    pending.take(state, e);
                }
            }
        }
        if self.c.len() >= self.target(n) {
            self.stage = IsolatorStage::Boxes;
        }
        Ok(())
    }

    /// BoxMaker's rule on the free stars of Maker-free `C` vertices.
    fn boxes(&mut self, state: &BoardState, pending: &mut Pending, k: usize) {
        let live: Vec<Vertex> = self.c.iter().copied().filter(|&v| state.d_maker(v) == 0).collect();
        let sizes: Vec<usize> = live.iter().map(|&v| pending.free_at(state, v).count()).collect();
        let want = k - pending.edges.len();
        if want == 0 || sizes.iter().all(|&s| s == 0) {
            return;
        }
        let bs = BoxState::with_sizes(sizes, want);
        for i in boxmaker_strategy(&bs) {
            let e = pending.free_at(state, live[i]).next();
            if let Some(e) = e {
                pending.take(state, e);
            }
        }
    }

    /// Without boxes: cut off the Maker-free vertex with fewest free edges.
    fn fallback(&self, state: &BoardState, pending: &mut Pending, k: usize) {
        let n = state.board().n();
        while pending.edges.len() < k {
            let v = (0..n)
                .filter(|&v| state.d_maker(v) == 0 && pending.free_at(state, v).next().is_some())
                .min_by_key(|&v| (pending.free_at(state, v).count(), v));
            let e = match v {
                Some(v) => pending.free_at(state, v).next(),
                None => pending.free_edges(state).next(),
            };
            match e {
                Some(e) => pending.take(state, e),
                None => break,
            }
        }
    }
}

impl Strategy for BreakerIsolator {
    fn name(&self) -> &str {
        "breaker-isolator"
    }

    fn params(&self) -> Params {
        params([
            ("b", json!(self.b)),
            ("eps", json!(self.eps)),
            ("c_target", json!(self.c_target)),
        ])
    }

    fn choose(&mut self, state: &BoardState, _rng: &mut GameRng) -> Result<Vec<EdgeId>, Forfeit> {
        if state.moves_by(Role::Breaker) == 0 {
            self.c.clear();
            self.stage = IsolatorStage::Building;
        }
        let (k, _) = state.claim_bounds(state.to_move());
        let mut pending = Pending::new(state);
        match self.stage {
            IsolatorStage::Building => self.build(state, &mut pending, k)?,
            IsolatorStage::Boxes => self.c.retain(|&v| state.d_maker(v) == 0),
        }
        self.boxes(state, &mut pending, k);
        self.fallback(state, &mut pending, k);
        Ok(pending.edges)
    }
}
