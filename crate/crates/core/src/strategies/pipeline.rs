//! Maker's Hamiltonicity strategy in three stages: minimum degree until the
//! graph is a small-set expander, deficit reduction until it is an
//! (R2, c)-expander, then boosters until it is Hamiltonian.

use rand::seq::IteratorRandom;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::game::{params, BoardState, Forfeit, Params, Role, Strategy, Target};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::props::connectivity::is_connected;
use crate::props::expander::{find_violator_greedy, is_expander};
use crate::props::hamilton::{booster_set, posa_extend, EXACT_DP_LIMIT};
use crate::rng::GameRng;

use super::min_degree::MinDegreeCore;
use super::{fill_random, Pending};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PipelineStage {
    MinDegree,
    Expansion,
    Boosting,
    Done,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineParams {
    /// Breaker's bias, used for danger values.
    pub b: usize,
    /// Stage I degree target; default `⌈ln n⌉` (at least the expansion).
    pub c: Option<usize>,
    /// Stage I expander radius; default `min(⌊ln n⌋, R2 − 1)`, at least 1.
    pub r1: Option<usize>,
    /// Stage II expander radius; default `⌈n/5⌉`, or `⌈(n+k)/2k⌉` for
    /// k-connectivity.
    pub r2: Option<usize>,
    /// Expansion factor: 2 for Hamiltonicity, k for k-connectivity.
    pub expansion: usize,
    /// Largest n for exact expander checks in Stage II.
    pub exact_expander_limit: usize,
    /// Largest n for exact booster sets in Stage III.
    pub exact_booster_limit: usize,
    /// Greedy violator restarts above the exact limit.
    pub greedy_starts: usize,
    /// `Some(k)`: aim for k-connectivity and skip the booster stage.
    pub kconn: Option<usize>,
}

impl PipelineParams {
    pub fn hamiltonicity(b: usize) -> Self {
        PipelineParams {
            b,
            c: None,
            r1: None,
            r2: None,
            expansion: 2,
            exact_expander_limit: 25,
            exact_booster_limit: 16,
            greedy_starts: 8,
            kconn: None,
        }
    }

    pub fn k_connectivity(b: usize, k: usize) -> Self {
        PipelineParams {
            expansion: k.max(1),
            kconn: Some(k.max(1)),
            ..Self::hamiltonicity(b)
        }
    }

    /// `(c, r1, r2)` resolved for `n` vertices.
    pub fn resolve(&self, n: usize) -> (usize, usize, usize) {
        let ln = (n.max(2) as f64).ln();
        let r2 = self.r2.unwrap_or_else(|| match self.kconn {
            Some(k) => (n + k).div_ceil(2 * k),
            None => n.div_ceil(5),
        });
        let r2 = r2.clamp(1, n.max(1));
        let r1 = self
            .r1
            .unwrap_or_else(|| (ln.floor() as usize).min(r2.saturating_sub(1)))
            .clamp(1, r2);
        let c = self.c.unwrap_or(ln.ceil() as usize).max(self.expansion).max(1);
        (c, r1, r2)
    }
}

#[derive(Debug, Clone)]
pub struct HamPipeline {
    params: PipelineParams,
    stage: PipelineStage,
    core: Option<MinDegreeCore>,
    path: Vec<Vertex>,
    boosters_used: usize,
    stage_log: Vec<(PipelineStage, usize)>,
}

pub fn maker_hamiltonicity_pipeline(params: PipelineParams) -> HamPipeline {
    HamPipeline {
        params,
        stage: PipelineStage::MinDegree,
        core: None,
        path: Vec::new(),
        boosters_used: 0,
        stage_log: Vec::new(),
    }
}

/// The k-connectivity variant: (R2, k)-expander with `R2·k ≥ (n+k)/2`.
pub fn maker_kconnectivity_pipeline(b: usize, k: usize) -> HamPipeline {
    maker_hamiltonicity_pipeline(PipelineParams::k_connectivity(b, k))
}

impl HamPipeline {
    pub fn stage(&self) -> PipelineStage {
        self.stage
    }

    /// Stages entered, with the Maker move (1-based) at which each began.
    pub fn stage_log(&self) -> &[(PipelineStage, usize)] {
        &self.stage_log
    }

    pub fn boosters_used(&self) -> usize {
        self.boosters_used
    }

    /// Stage I degree target currently in force.
    pub fn degree_target(&self) -> Option<usize> {
        self.core.as_ref().map(|c| c.c)
    }

    fn advance(&mut self, to: PipelineStage, state: &BoardState) {
        self.stage = to;
        self.stage_log.push((to, state.moves_by(Role::Maker) + 1));
    }

    fn reset(&mut self, state: &BoardState) {
        let (c, _, _) = self.params.resolve(state.board().n());
        let mut core = MinDegreeCore::new(c, self.params.b);
        core.settle_at = Some(self.params.expansion);
        self.core = Some(core);
        self.stage = PipelineStage::MinDegree;
        self.path.clear();
        self.boosters_used = 0;
        self.stage_log = vec![(PipelineStage::MinDegree, 1)];
    }

    /// One step of the current stage: `Ok(true)` if an edge was taken.
    fn step(&mut self, state: &BoardState, pending: &mut Pending, rng: &mut GameRng) -> Result<bool, Forfeit> {
        let n = state.board().n();
        let (_, r1, r2) = self.params.resolve(n);
        let expansion = self.params.expansion as f64;
        match self.stage {
            PipelineStage::MinDegree => {
                // Small boards: leave as soon as the expander check passes.
                if n <= self.params.exact_expander_limit
                    && (0..n).all(|v| pending.degree(state, Role::Maker, v) >= self.params.expansion)
                {
                    let m = pending.graph(state, Role::Maker);
                    if is_expander(&m, r1, expansion).map(|w| w.holds).unwrap_or(false) {
                        self.advance(PipelineStage::Expansion, state);
                        return Ok(false);
                    }
                }
                let core = self.core.as_mut().expect("reset");
                if core.pick(state, pending, rng)?.is_some() {
                    return Ok(true);
                }
                let m = pending.graph(state, Role::Maker);
                let ok = is_expander(&m, r1, expansion).map(|w| w.holds).unwrap_or(false);
                if ok {
                    self.advance(PipelineStage::Expansion, state);
                } else {
                    core.c += 1;
                    if core.c >= n {
                        return Err(Forfeit(format!("no ({r1},{expansion})-expander reachable by minimum degree")));
                    }
                }
                Ok(false)
            }
            PipelineStage::Expansion => {
                let m = pending.graph(state, Role::Maker);
                let violator = if r2 <= r1 {
                    None
                } else if n <= self.params.exact_expander_limit {
                    is_expander(&m, r2, expansion).ok().and_then(|w| w.violating_set)
                } else {
                    find_violator_greedy(&m, r1 + 1, r2, expansion, self.params.greedy_starts)
                };
                match violator {
                    Some(u) => {
                        let e = grow_edge(&m, &u, state, pending).ok_or_else(|| {
                            Forfeit(format!("violating set of size {} has no free edge to grow its neighborhood", u.len()))
                        })?;
                        pending.take(state, e);
                        Ok(true)
                    }
                    None => {
                        let next = if self.params.kconn.is_none() && state.spec().target == Target::Hamiltonicity {
                            PipelineStage::Boosting
                        } else {
                            PipelineStage::Done
                        };
                        self.advance(next, state);
                        Ok(false)
                    }
                }
            }
            PipelineStage::Boosting => {
                let m = pending.graph(state, Role::Maker);
                let pick = if n <= self.params.exact_booster_limit.min(EXACT_DP_LIMIT) {
                    let rep = booster_set(&m).map_err(|e| Forfeit(e.to_string()))?;
                    if rep.is_hamiltonian {
                        self.advance(PipelineStage::Done, state);
                        return Ok(false);
                    }
                    let g = state.board();
                    let free = rep
                        .boosters
                        .iter()
                        .filter_map(|ed| g.edge_id(ed.u(), ed.v()))
                        .filter(|&e| pending.is_free(state, e))
                        .min();
                    Some(free.ok_or_else(|| Forfeit("no free booster while not Hamiltonian".into()))?)
                } else {
                    if posa_extend(&m, &mut self.path, 40 * n, rng) {
                        self.advance(PipelineStage::Done, state);
                        return Ok(false);
                    }
                    heuristic_booster(&m, &self.path, state, pending)
                };
                match pick {
                    Some(e) => {
                        self.boosters_used += 1;
                        pending.take(state, e);
                    }
                    None => {
                        // No booster found by the heuristic: extend at a path end if possible.
                        let ends = [self.path[0], *self.path.last().expect("nonempty")];
                        let e = ends
                            .iter()
                            .flat_map(|&v| pending.free_at(state, v).collect::<Vec<_>>())
                            .choose(rng)
                            .or_else(|| pending.free_edges(state).choose(rng));
                        match e {
                            Some(e) => pending.take(state, e),
                            None => return Err(Forfeit("no free edge".into())),
                        }
                    }
                }
                Ok(true)
            }
            PipelineStage::Done => {
                let k = pending.edges.len() + 1;
                fill_random(state, pending, k, rng);
                Ok(true)
            }
        }
    }
}

/// Free edge from `u` to a vertex outside `u ∪ N(u)`; each such edge grows
/// N(u) by one, so prefer the endpoint pair of lowest Maker degree, then the
/// lowest edge id.
fn grow_edge(m: &Graph, u: &[Vertex], state: &BoardState, pending: &Pending) -> Option<EdgeId> {
    let n = m.n();
    let mut blocked = vec![false; n];
    for &x in u {
        blocked[x] = true;
        for w in m.neighbors(x) {
            blocked[w] = true;
        }
    }
    let g = state.board();
    u.iter()
        .flat_map(|&x| g.incidences(x).filter(|&(w, _)| !blocked[w]).map(move |(w, e)| (x, w, e)))
        .filter(|&(_, _, e)| pending.is_free(state, e))
        .min_by_key(|&(x, w, e)| (m.degree(w) + m.degree(x), e))
        .map(|(_, _, e)| e)
}

/// A free edge that lengthens `path` or closes it into a cycle, searched
/// over the endpoints reachable by rotations with either end fixed.
fn heuristic_booster(m: &Graph, path: &[Vertex], state: &BoardState, pending: &Pending) -> Option<EdgeId> {
    let n = m.n();
    let g = state.board();
    let closing_boosts = path.len() == n || is_connected(m);
    let mut rev = path.to_vec();
    rev.reverse();
    for base in [path.to_vec(), rev] {
        let mut on_path = vec![false; n];
        for &v in &base {
            on_path[v] = true;
        }
        let start = base[0];
        for p in rotations(m, &base, 2 * n) {
            let y = *p.last().expect("nonempty");
            let found = pending
                .free_at(state, y)
                .filter(|&e| {
                    let w = g.edge(e).other(y);
                    !on_path[w] || (closing_boosts && w == start)
                })
                .min();
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

/// Paths obtained from `path` by Pósa rotations keeping `path[0]` fixed,
/// breadth first, one per distinct endpoint, at most `cap`.
fn rotations(m: &Graph, path: &[Vertex], cap: usize) -> Vec<Vec<Vertex>> {
    let n = m.n();
    let len = path.len();
    let mut seen = vec![false; n];
    seen[path[len - 1]] = true;
    let mut out = vec![path.to_vec()];
    let mut pos = vec![usize::MAX; n];
    let mut head = 0;
    while head < out.len() && out.len() < cap {
        let p = out[head].clone();
        head += 1;
        for (i, &v) in p.iter().enumerate() {
            pos[v] = i;
        }
        let y = p[len - 1];
        for u in m.neighbors(y) {
            let i = pos[u];
            if i == usize::MAX || i + 2 >= len {
                continue;
            }
            let end = p[i + 1];
            if seen[end] {
                continue;
            }
            seen[end] = true;
            let mut q = p[..=i].to_vec();
            q.extend(p[i + 1..].iter().rev());
            out.push(q);
            if out.len() >= cap {
                break;
            }
        }
        for &v in &p {
            pos[v] = usize::MAX;
        }
    }
    out
}

impl Strategy for HamPipeline {
    fn name(&self) -> &str {
        if self.params.kconn.is_some() {
            "maker-kconn-pipeline"
        } else {
            "maker-ham-pipeline"
        }
    }

    fn params(&self) -> Params {
        let p = &self.params;
        params([
            ("b", json!(p.b)),
            ("c", json!(p.c)),
            ("r1", json!(p.r1)),
            ("r2", json!(p.r2)),
            ("expansion", json!(p.expansion)),
            ("exact_expander_limit", json!(p.exact_expander_limit)),
            ("exact_booster_limit", json!(p.exact_booster_limit)),
            ("greedy_starts", json!(p.greedy_starts)),
            ("k", json!(p.kconn)),
        ])
    }

    fn choose(&mut self, state: &BoardState, rng: &mut GameRng) -> Result<Vec<EdgeId>, Forfeit> {
        if state.moves_by(Role::Maker) == 0 || self.core.is_none() {
            self.reset(state);
        }
        let (k, _) = state.claim_bounds(state.to_move());
        let mut pending = Pending::new(state);
        let mut idle = 0;
        while pending.edges.len() < k {
            if self.step(state, &mut pending, rng)? {
                idle = 0;
            } else {
                idle += 1;
                if idle > state.board().n() + 4 {
                    break;
                }
            }
        }
        fill_random(state, &mut pending, k, rng);
        Ok(pending.edges)
    }
}
