//! Strategies for the random-graph games: Breaker's and Avoider's isolators,
//! Maker's minimum-degree and Hamiltonicity strategies, Enforcer's forcer.

pub mod avoider_isolator;
pub mod breaker_isolator;
pub mod danger;
pub mod forcer;
pub mod min_degree;
pub mod pipeline;
pub mod registry;

pub use avoider_isolator::{avoider_isolator, AvoiderIsolator, AvoiderPlan};
pub use breaker_isolator::{breaker_isolator, BreakerIsolator, IsolatorStage};
pub use danger::{danger_trace, DangerView};
pub use forcer::{enforcer_forcer, EnforcerForcer, ForcerFamily};
pub use min_degree::{maker_min_degree, CoverageStats, MakerMinDegree};
pub use pipeline::{maker_hamiltonicity_pipeline, maker_kconnectivity_pipeline, HamPipeline, PipelineParams, PipelineStage};
pub use registry::{build_strategy, strategy_names, RegistryError};

use fixedbitset::FixedBitSet;

use crate::game::{BoardState, Role};
use crate::graph::{EdgeId, Graph, Vertex};

/// Claims chosen so far in the current move, so later picks of the same
/// move see earlier ones.
#[derive(Debug, Clone)]
pub(crate) struct Pending {
    pub edges: Vec<EdgeId>,
    taken: FixedBitSet,
    deg: Vec<u32>,
}

impl Pending {
    pub fn new(state: &BoardState) -> Self {
        Pending {
            edges: Vec::new(),
            taken: FixedBitSet::with_capacity(state.board().edge_count()),
            deg: vec![0; state.board().n()],
        }
    }

    pub fn is_free(&self, state: &BoardState, e: EdgeId) -> bool {
        state.is_free(e) && !self.taken.contains(e)
    }

    pub fn take(&mut self, state: &BoardState, e: EdgeId) {
        debug_assert!(self.is_free(state, e));
        self.taken.insert(e);
        self.edges.push(e);
        let ed = state.board().edge(e);
        self.deg[ed.u()] += 1;
        self.deg[ed.v()] += 1;
    }

    /// Degree of `v` among the mover's edges, counting pending claims.
    pub fn degree(&self, state: &BoardState, role: Role, v: Vertex) -> usize {
        let base = match role {
            Role::Maker => state.d_maker(v),
            Role::Breaker => state.d_breaker(v),
        };
        base + self.deg[v] as usize
    }

    pub fn free_at<'s>(&'s self, state: &'s BoardState, v: Vertex) -> impl Iterator<Item = EdgeId> + 's {
        state.free_at(v).filter(move |&e| !self.taken.contains(e))
    }

    pub fn free_edges<'s>(&'s self, state: &'s BoardState) -> impl Iterator<Item = EdgeId> + 's {
        state.free_edges().filter(move |&e| !self.taken.contains(e))
    }

    /// The graph of `role`'s edges plus the pending claims.
    pub fn graph(&self, state: &BoardState, role: Role) -> Graph {
        state
            .board()
            .spanning_subgraph(state.owned_by(role).chain(self.edges.iter().copied()))
    }
}

/// Fills the move up to the minimum legal size with uniformly random free
/// edges.
pub(crate) fn fill_random(state: &BoardState, pending: &mut Pending, k: usize, rng: &mut crate::rng::GameRng) {
    if pending.edges.len() >= k {
        return;
    }
    let pool: Vec<EdgeId> = pending.free_edges(state).collect();
    for e in crate::game::random_subset(&pool, k - pending.edges.len(), rng) {
        pending.take(state, e);
    }
}
