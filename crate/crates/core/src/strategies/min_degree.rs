//! Maker's minimum-degree strategy: always serve the most endangered vertex.

use rand::seq::IteratorRandom;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::game::{params, BoardState, Forfeit, Params, Role, Strategy};
use crate::graph::{EdgeId, Vertex};
use crate::rng::GameRng;

use super::danger::danger;
use super::{fill_random, Pending};

/// When each vertex reached Maker degree `c`, and how many free edges it
/// still had then.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CoverageStats {
    /// Maker moves (1-based) after which every vertex had degree `c`.
    pub covered_after: Option<usize>,
    /// Free edges at each vertex right after it reached degree `c`.
    pub free_at_cover: Vec<Option<usize>>,
}

impl CoverageStats {
    pub fn min_free_at_cover(&self) -> Option<usize> {
        self.free_at_cover.iter().flatten().copied().min()
    }
}

/// Danger-driven selection shared with the Hamiltonicity pipeline.
#[derive(Debug, Clone)]
pub(crate) struct MinDegreeCore {
    pub c: usize,
    pub b: usize,
    pub stats: CoverageStats,
    /// Vertices with at least this Maker degree and no free edge are
    /// treated as covered instead of causing a forfeit.
    pub settle_at: Option<usize>,
}

impl MinDegreeCore {
    pub fn new(c: usize, b: usize) -> Self {
        MinDegreeCore {
            c,
            b,
            stats: CoverageStats::default(),
            settle_at: None,
        }
    }

    /// The dangerous vertex of maximum danger, lowest id on ties, counting
    /// pending claims.
    pub fn target(&self, state: &BoardState, pending: &Pending) -> Option<Vertex> {
        let mut best: Option<(i64, Vertex)> = None;
        for v in 0..state.board().n() {
            let dm = pending.degree(state, Role::Maker, v);
            if dm >= self.c || self.settle_at.is_some_and(|s| dm >= s && pending.free_at(state, v).next().is_none()) {
                continue;
            }
            let d = danger(state.d_breaker(v), dm, self.b);
            if best.map_or(true, |(bd, _)| d > bd) {
                best = Some((d, v));
            }
        }
        best.map(|(_, v)| v)
    }

    /// One claim: `Ok(None)` once every vertex is covered.
    pub fn pick(
        &mut self,
        state: &BoardState,
        pending: &mut Pending,
        rng: &mut GameRng,
    ) -> Result<Option<EdgeId>, Forfeit> {
        let n = state.board().n();
        if self.stats.free_at_cover.len() != n {
            self.stats.free_at_cover = vec![None; n];
        }
        let Some(v) = self.target(state, pending) else {
            return Ok(None);
        };
        let e = pending.free_at(state, v).choose(rng).ok_or_else(|| {
            Forfeit(format!(
                "vertex {v} has Maker degree {} < {} and no free edge",
                pending.degree(state, Role::Maker, v),
                self.c
            ))
        })?;
        pending.take(state, e);
        let ed = state.board().edge(e);
        for x in [ed.u(), ed.v()] {
            if pending.degree(state, Role::Maker, x) == self.c && self.stats.free_at_cover[x].is_none() {
                self.stats.free_at_cover[x] = Some(pending.free_at(state, x).count());
            }
        }
        if self.stats.covered_after.is_none() && self.target(state, pending).is_none() {
            self.stats.covered_after = Some(state.moves_by(Role::Maker) + 1);
        }
        Ok(Some(e))
    }
}

/// Maker's minimum-degree strategy; after coverage it claims random edges.
#[derive(Debug, Clone)]
pub struct MakerMinDegree {
    core: MinDegreeCore,
    eps: f64,
}

/// Maker strategy for the minimum-degree-`c` game against bias `b`.
pub fn maker_min_degree(c: usize, b: usize, eps: f64) -> MakerMinDegree {
    MakerMinDegree {
        core: MinDegreeCore::new(c.max(1), b),
        eps,
    }
}

impl MakerMinDegree {
    pub fn coverage(&self) -> &CoverageStats {
        &self.core.stats
    }
}

impl Strategy for MakerMinDegree {
    fn name(&self) -> &str {
        "maker-min-degree"
    }

    fn params(&self) -> Params {
        params([("c", json!(self.core.c)), ("b", json!(self.core.b)), ("eps", json!(self.eps))])
    }

    fn choose(&mut self, state: &BoardState, rng: &mut GameRng) -> Result<Vec<EdgeId>, Forfeit> {
        if state.moves_by(Role::Maker) == 0 {
            self.core.stats = CoverageStats::default();
        }
        let (k, _) = state.claim_bounds(state.to_move());
        let mut pending = Pending::new(state);
        while pending.edges.len() < k {
            if self.core.pick(state, &mut pending, rng)?.is_none() {
                break;
            }
        }
        fill_random(state, &mut pending, k, rng);
        Ok(pending.edges)
    }
}
