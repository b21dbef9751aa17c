//! Board state, move legality and win detection.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, EdgeId, Graph};
use crate::props::connectivity::{is_biconnected, is_connected, is_k_connected};
use crate::props::hamilton::{hamiltonicity, is_hamiltonian, posa_extend, EXACT_DP_LIMIT};
use crate::rng::{mix64, stream};
use crate::props::matching::has_perfect_matching;

use super::spec::{Convention, GameSpec, Role, Target};

/// Backtracking budget for Hamiltonicity checks on boards larger than the
/// exact limit, for [`BoardState::maker_has_target`] and at exhaustion.
pub const HAM_PLAY_BUDGET: u64 = 20_000;
pub const HAM_FINAL_BUDGET: u64 = 200_000;
/// Rotation-extension steps per Maker move, per vertex, for the in-play
/// Hamiltonicity check on large boards. The search resumes from the path
/// kept from the previous move.
pub const HAM_WARM_STEPS: usize = 40;
/// Largest n for exact Hamiltonicity / k-connectivity / matching checks of
/// the Maker graph plus free edges (early cutoff).
const CUTOFF_EXACT_HAM: usize = 12;
const CUTOFF_EXACT_FLOW: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Owner {
    Free,
    Maker,
    Breaker,
}

impl From<Role> for Owner {
    fn from(r: Role) -> Owner {
        match r {
            Role::Maker => Owner::Maker,
            Role::Breaker => Owner::Breaker,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub role: Role,
    pub edges: Vec<EdgeId>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("game is over")]
    GameOver,
    #[error("{got:?} moved but it is {expected:?}'s turn")]
    WrongMover { expected: Role, got: Role },
    #[error("edge {0} is not on the board")]
    UnknownEdge(EdgeId),
    #[error("edge {0} is already claimed")]
    NotFree(EdgeId),
    #[error("edge {0} listed twice")]
    Repeated(EdgeId),
    #[error("claimed {got} edges; {rule}")]
    Cardinality { got: usize, rule: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("biases must be at least 1 (a={a}, b={b})")]
    Bias { a: usize, b: usize },
    #[error("{0}")]
    Incompatible(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    /// The Maker/Avoider graph has the target property.
    TargetAchieved,
    /// Decided before exhaustion: the Maker/Avoider graph together with
    /// the free edges lacks the property, so the final outcome can no longer
    /// change.
    TargetUnavoidable,
    BoardExhausted,
    Forfeit,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::TargetAchieved => "target-achieved",
            Reason::TargetUnavoidable => "target-unavoidable",
            Reason::BoardExhausted => "board-exhausted",
            Reason::Forfeit => "forfeit",
        })
    }
}

#[derive(Debug, Clone)]
pub struct GameResult {
    pub winner: Role,
    pub reason: Reason,
    pub move_count: usize,
    pub final_state: BoardState,
    /// Forfeit message, if any.
    pub detail: Option<String>,
}

/// Disjoint-set forest over vertices.
#[derive(Debug, Clone)]
struct Dsu {
    parent: Vec<u32>,
    components: usize,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n as u32).collect(),
            components: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb) as u32;
            self.components -= 1;
        }
    }
}

/// A game in progress.
#[derive(Debug, Clone)]
pub struct BoardState {
    spec: GameSpec,
    board: Arc<Graph>,
    owner: Vec<Owner>,
    deg_m: Vec<u32>,
    deg_b: Vec<u32>,
    free: usize,
    to_move: Role,
    history: Vec<Move>,
    // Win-detection caches.
    need: usize,
    m_deg_ok: usize,
    mf_deg_bad: usize,
    m_dsu: Dsu,
    set_maker: Vec<u32>,
    set_dead: Vec<bool>,
    sets_full: usize,
    sets_alive: usize,
    outcome: Option<(Role, Reason)>,
    // Longest path found so far in the Maker graph (large Hamiltonicity boards).
    ham_path: Vec<usize>,
}

impl PartialEq for BoardState {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
            && self.board == other.board
            && self.owner == other.owner
            && self.to_move == other.to_move
            && self.history == other.history
    }
}

impl BoardState {
    /// All edges free, `spec.first_player` to move.
    pub fn new(spec: GameSpec, board: Arc<Graph>) -> Result<Self, SpecError> {
        validate(&spec, &board)?;
        let n = board.n();
        let m = board.edge_count();
        let need = spec.target.degree_need(n);
        let (set_maker, set_dead, sets_alive) = match &spec.target {
            Target::ExplicitHypergraph(h) => (vec![0; h.len()], vec![false; h.len()], h.len()),
            _ => (Vec::new(), Vec::new(), 0),
        };
        let sets_full = match &spec.target {
            Target::ExplicitHypergraph(h) => h.sets().iter().filter(|s| s.is_empty()).count(),
            _ => 0,
        };
        let m_deg_ok = if need == 0 { n } else { 0 };
        let mf_deg_bad = (0..n).filter(|&v| board.degree(v) < need).count();
        let to_move = spec.first_player;
        let mut s = BoardState {
            spec,
            owner: vec![Owner::Free; m],
            deg_m: vec![0; n],
            deg_b: vec![0; n],
            free: m,
            to_move,
            history: Vec::new(),
            need,
            m_deg_ok,
            mf_deg_bad,
            m_dsu: Dsu::new(n),
            set_maker,
            set_dead,
            sets_full,
            sets_alive,
            outcome: None,
            ham_path: Vec::new(),
            board,
        };
        s.outcome = s.evaluate(true, true);
        Ok(s)
    }

    /// Rebuilds a state by replaying `history` from the start.
    pub fn replay(spec: GameSpec, board: Arc<Graph>, history: &[Move]) -> Result<Self, ReplayError> {
        let mut s = BoardState::new(spec, board)?;
        for (i, mv) in history.iter().enumerate() {
            s.apply_claim(mv.role, &mv.edges)
                .map_err(|e| ReplayError::Move { index: i, error: e })?;
        }
        Ok(s)
    }

    pub fn spec(&self) -> &GameSpec {
        &self.spec
    }

    pub fn board(&self) -> &Graph {
        &self.board
    }

    pub fn board_arc(&self) -> &Arc<Graph> {
        &self.board
    }

    pub fn owner(&self, e: EdgeId) -> Owner {
        self.owner[e]
    }

    pub fn ownership(&self) -> &[Owner] {
        &self.owner
    }

    pub fn is_free(&self, e: EdgeId) -> bool {
        self.owner[e] == Owner::Free
    }

    pub fn free_count(&self) -> usize {
        self.free
    }

    pub fn free_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.owner.len()).filter(|&e| self.owner[e] == Owner::Free)
    }

    pub fn owned_by(&self, role: Role) -> impl Iterator<Item = EdgeId> + '_ {
        let o = Owner::from(role);
        (0..self.owner.len()).filter(move |&e| self.owner[e] == o)
    }

    pub fn count_owned(&self, role: Role) -> usize {
        let o = Owner::from(role);
        self.owner.iter().filter(|&&x| x == o).count()
    }

    pub fn to_move(&self) -> Role {
        self.to_move
    }

    pub fn history(&self) -> &[Move] {
        &self.history
    }

    pub fn move_count(&self) -> usize {
        self.history.len()
    }

    /// Number of moves `role` has made.
    pub fn moves_by(&self, role: Role) -> usize {
        self.history.iter().filter(|m| m.role == role).count()
    }

    pub fn d_maker(&self, v: usize) -> usize {
        self.deg_m[v] as usize
    }

    pub fn d_breaker(&self, v: usize) -> usize {
        self.deg_b[v] as usize
    }

    pub fn d_free(&self, v: usize) -> usize {
        self.board.degree(v) - self.d_maker(v) - self.d_breaker(v)
    }

    /// Free edges at `v`.
    pub fn free_at(&self, v: usize) -> impl Iterator<Item = EdgeId> + '_ {
        self.board.incident_edges(v).filter(|&e| self.owner[e] == Owner::Free)
    }

    pub fn bias(&self, role: Role) -> usize {
        self.spec.bias(role)
    }

    /// Graph of the edges owned by `role` on the board's vertex set.
    pub fn graph_of(&self, role: Role) -> Graph {
        self.board.spanning_subgraph(self.owned_by(role))
    }

    /// Graph of the edges not owned by `role`.
    pub fn graph_without(&self, role: Role) -> Graph {
        let o = Owner::from(role);
        self.board
            .spanning_subgraph((0..self.owner.len()).filter(|&e| self.owner[e] != o))
    }

    pub fn is_over(&self) -> bool {
        self.outcome.is_some()
    }

    /// Allowed claim sizes for `role` now: `(min, max)`.
    pub fn claim_bounds(&self, role: Role) -> (usize, usize) {
        let bias = self.bias(role);
        if self.free <= bias {
            (self.free, self.free)
        } else {
            match self.spec.convention {
                Convention::MakerBreaker => (bias, bias),
                Convention::AvoiderEnforcerMonotone => (bias, self.free),
            }
        }
    }

    /// Checks legality without applying.
    pub fn check_claim(&self, who: Role, edges: &[EdgeId]) -> Result<(), MoveError> {
        if self.outcome.is_some() {
            return Err(MoveError::GameOver);
        }
        if who != self.to_move {
            return Err(MoveError::WrongMover {
                expected: self.to_move,
                got: who,
            });
        }
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        for &e in edges {
            if e >= self.owner.len() {
                return Err(MoveError::UnknownEdge(e));
            }
            if self.owner[e] != Owner::Free {
                return Err(MoveError::NotFree(e));
            }
            if !seen.insert(e) {
                return Err(MoveError::Repeated(e));
            }
        }
        let (lo, hi) = self.claim_bounds(who);
        if edges.len() < lo || edges.len() > hi {
            let rule = if lo == hi {
                format!("exactly {lo} required")
            } else {
                format!("between {lo} and {hi} required")
            };
            return Err(MoveError::Cardinality {
                got: edges.len(),
                rule,
            });
        }
        Ok(())
    }

    /// Applies a legal claim, flips the turn and re-evaluates the outcome.
    pub fn apply_claim(&mut self, who: Role, edges: &[EdgeId]) -> Result<(), MoveError> {
        self.check_claim(who, edges)?;
        let o = Owner::from(who);
        for &e in edges {
            self.owner[e] = o;
            self.free -= 1;
            let Edge { .. } = self.board.edge(e);
            let (u, v) = (self.board.edge(e).u(), self.board.edge(e).v());
            match who {
                Role::Maker => {
                    for x in [u, v] {
                        self.deg_m[x] += 1;
                        if self.deg_m[x] as usize == self.need {
                            self.m_deg_ok += 1;
                        }
                    }
                    self.m_dsu.union(u, v);
                    if let Target::ExplicitHypergraph(h) = &self.spec.target {
                        for &si in h.sets_containing(e) {
                            let si = si as usize;
                            self.set_maker[si] += 1;
                            if !self.set_dead[si] && self.set_maker[si] as usize == h.sets()[si].len() {
                                self.sets_full += 1;
                            }
                        }
                    }
                }
                Role::Breaker => {
                    for x in [u, v] {
                        let before = self.board.degree(x) - self.deg_b[x] as usize;
                        self.deg_b[x] += 1;
                        if before == self.need {
                            self.mf_deg_bad += 1;
                        }
                    }
                    if let Target::ExplicitHypergraph(h) = &self.spec.target {
                        for &si in h.sets_containing(e) {
                            let si = si as usize;
                            if !self.set_dead[si] {
                                self.set_dead[si] = true;
                                self.sets_alive -= 1;
                            }
                        }
                    }
                }
            }
        }
        self.history.push(Move {
            role: who,
            edges: edges.to_vec(),
        });
        self.to_move = who.other();
        self.outcome = self.evaluate(who == Role::Maker, who == Role::Breaker);
        Ok(())
    }

    /// Functional variant of [`BoardState::apply_claim`].
    pub fn applied(&self, who: Role, edges: &[EdgeId]) -> Result<BoardState, MoveError> {
        let mut s = self.clone();
        s.apply_claim(who, edges)?;
        Ok(s)
    }

    /// The result if the game is decided.
    pub fn check_winner(&self) -> Option<GameResult> {
        self.outcome.map(|(winner, reason)| GameResult {
            winner,
            reason,
            move_count: self.history.len(),
            final_state: self.clone(),
            detail: None,
        })
    }

    pub fn outcome(&self) -> Option<(Role, Reason)> {
        self.outcome
    }

    /// Does the Maker/Avoider graph have the target property?
    pub fn maker_has_target(&self) -> bool {
        self.maker_has_target_with(HAM_PLAY_BUDGET)
    }

    fn maker_has_target_with(&self, ham_budget: u64) -> bool {
        let n = self.board.n();
        match &self.spec.target {
            Target::ExplicitHypergraph(_) => self.sets_full > 0,
            Target::MinDegree(_) | Target::IsolateVertex => self.m_deg_ok == n,
            Target::Connectivity => n <= 1 || self.m_dsu.components == 1,
            Target::PerfectMatching => {
                let isolated = self.deg_m.iter().filter(|&&d| d == 0).count();
                isolated <= n % 2 && has_perfect_matching(&self.graph_of(Role::Maker))
            }
            Target::Hamiltonicity => {
                self.m_deg_ok == n
                    && self.m_dsu.components == 1
                    && hamiltonicity(&self.graph_of(Role::Maker), ham_budget).is_yes()
            }
            Target::KConnectivity(k) => {
                self.m_deg_ok == n && is_k_connected(&self.graph_of(Role::Maker), *k)
            }
        }
    }

    /// Can the Maker/Avoider graph still get the property if it received
    /// every free edge? May answer `true` when unsure.
    pub fn target_still_possible(&self) -> bool {
        let n = self.board.n();
        if self.mf_deg_bad > 0 {
            return false;
        }
        match &self.spec.target {
            Target::ExplicitHypergraph(_) => self.sets_alive > 0,
            Target::MinDegree(_) | Target::IsolateVertex => true,
            Target::Connectivity => is_connected(&self.graph_without(Role::Breaker)),
            Target::PerfectMatching => {
                n > CUTOFF_EXACT_FLOW || has_perfect_matching(&self.graph_without(Role::Breaker))
            }
            Target::Hamiltonicity => {
                let g = self.graph_without(Role::Breaker);
                if !is_connected(&g) || !is_biconnected(&g) {
                    return false;
                }
                n > CUTOFF_EXACT_HAM || is_hamiltonian(&g)
            }
            Target::KConnectivity(k) => {
                let g = self.graph_without(Role::Breaker);
                if n > CUTOFF_EXACT_FLOW {
                    is_connected(&g)
                } else {
                    is_k_connected(&g, *k)
                }
            }
        }
    }

    /// Warm-started in-play check for large Hamiltonicity boards. A miss
    /// only delays detection: the Maker graph keeps the cycle and the final
    /// check at exhaustion is thorough.
    fn warm_ham(&mut self) -> bool {
        let n = self.board.n();
        if self.m_deg_ok != n || self.m_dsu.components != 1 {
            return false;
        }
        let g = self.graph_of(Role::Maker);
        let mut rng = stream(mix64(0x7f4a_7c15, n as u64), self.history.len() as u64);
        posa_extend(&g, &mut self.ham_path, HAM_WARM_STEPS * n, &mut rng)
    }

    fn evaluate(&mut self, maker_moved: bool, breaker_moved: bool) -> Option<(Role, Reason)> {
        let exhausted = self.free == 0;
        let mb = self.spec.convention == Convention::MakerBreaker;
        if maker_moved || exhausted {
            let warm = !exhausted
                && self.spec.target == Target::Hamiltonicity
                && self.board.n() > EXACT_DP_LIMIT;
            let hit = if warm {
                self.warm_ham()
            } else {
                let budget = if exhausted { HAM_FINAL_BUDGET } else { HAM_PLAY_BUDGET };
                self.maker_has_target_with(budget)
            };
            if hit {
                let winner = if mb { Role::Maker } else { Role::Breaker };
                return Some((winner, Reason::TargetAchieved));
            }
        }
        let no_target_winner = if mb { Role::Breaker } else { Role::Maker };
        if exhausted {
            return Some((no_target_winner, Reason::BoardExhausted));
        }
        if self.spec.early_cutoff && breaker_moved && !self.target_still_possible() {
            return Some((no_target_winner, Reason::TargetUnavoidable));
        }
        None
    }
}

fn validate(spec: &GameSpec, board: &Graph) -> Result<(), SpecError> {
    if spec.bias_a == 0 || spec.bias_b == 0 {
        return Err(SpecError::Bias {
            a: spec.bias_a,
            b: spec.bias_b,
        });
    }
    let n = board.n();
    let bad = |m: String| Err(SpecError::Incompatible(m));
    match &spec.target {
        Target::Hamiltonicity if n < 3 => bad(format!("Hamiltonicity needs n >= 3, got {n}")),
        Target::KConnectivity(0) => bad("KConnectivity needs k >= 1".into()),
        Target::MinDegree(0) => bad("MinDegree needs c >= 1".into()),
        Target::ExplicitHypergraph(h) if h.ground() != board.edge_count() => bad(format!(
            "hypergraph ground set has {} elements but the board has {} edges",
            h.ground(),
            board.edge_count()
        )),
        _ => Ok(()),
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReplayError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("move {index}: {error}")]
    Move { index: usize, error: MoveError },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::Hypergraph;

    fn k3_state(target: Target, conv: Convention) -> BoardState {
        BoardState::new(GameSpec::new(conv, target, 1, 1), Arc::new(Graph::complete(3))).unwrap()
    }

    #[test]
    fn fresh_board() {
        let s = k3_state(Target::Connectivity, Convention::MakerBreaker);
        assert_eq!(s.free_count(), 3);
        assert_eq!(s.to_move(), Role::Maker);
        let spec = GameSpec::avoider_enforcer(Target::IsolateVertex, 1, 2);
        let s = BoardState::new(spec.clone(), Arc::new(Graph::cycle(4))).unwrap();
        assert_eq!(s.free_count(), 4);
        assert_eq!(BoardState::replay(spec.clone(), Arc::new(Graph::cycle(4)), &[]).unwrap(), s);
    }

    #[test]
    fn spec_validation() {
        let g = Arc::new(Graph::complete(2));
        assert!(matches!(
            BoardState::new(GameSpec::maker_breaker(Target::Hamiltonicity, 1, 1), g.clone()),
            Err(SpecError::Incompatible(_))
        ));
        assert!(matches!(
            BoardState::new(GameSpec::maker_breaker(Target::Connectivity, 0, 1), g.clone()),
            Err(SpecError::Bias { .. })
        ));
        let h = Arc::new(Hypergraph::new(3, vec![vec![0]]).unwrap());
        assert!(BoardState::new(GameSpec::maker_breaker(Target::ExplicitHypergraph(h), 1, 1), g).is_err());
    }

    #[test]
    fn cardinality_rules() {
        let g = Arc::new(Graph::complete(5)); // 10 edges
        let spec = GameSpec::maker_breaker(Target::Connectivity, 1, 2).with_first(Role::Breaker);
        let mut s = BoardState::new(spec, g.clone()).unwrap();
        assert!(matches!(s.apply_claim(Role::Breaker, &[0]), Err(MoveError::Cardinality { .. })));
        assert!(matches!(s.apply_claim(Role::Maker, &[0]), Err(MoveError::WrongMover { .. })));
        s.apply_claim(Role::Breaker, &[0, 1]).unwrap();
        assert!(matches!(s.apply_claim(Role::Maker, &[0]), Err(MoveError::NotFree(0))));
        assert!(matches!(s.apply_claim(Role::Maker, &[99]), Err(MoveError::UnknownEdge(99))));

        let spec = GameSpec::avoider_enforcer(Target::Connectivity, 1, 2).with_first(Role::ENFORCER);
        let mut s = BoardState::new(spec, g).unwrap();
        s.apply_claim(Role::ENFORCER, &[0, 1, 4, 5]).unwrap();
        assert!(!s.is_over());
        assert_eq!(s.free_count(), 6);
        assert!(matches!(s.apply_claim(Role::AVOIDER, &[]), Err(MoveError::Cardinality { .. })));
        assert!(matches!(s.apply_claim(Role::AVOIDER, &[6, 6]), Err(MoveError::Repeated(6))));
    }

    #[test]
    fn short_final_move() {
        let g = Arc::new(Graph::path(3)); // 2 edges
        let spec = GameSpec::maker_breaker(Target::Hamiltonicity, 1, 2).with_cutoff(false);
        let g3 = Arc::new(Graph::cycle(4));
        let mut s = BoardState::new(spec, g3).unwrap();
        s.apply_claim(Role::Maker, &[0]).unwrap();
        s.apply_claim(Role::Breaker, &[1, 2]).unwrap();
        s.apply_claim(Role::Maker, &[3]).unwrap();
        assert_eq!(s.outcome(), Some((Role::Breaker, Reason::BoardExhausted)));
        let spec = GameSpec::maker_breaker(Target::Connectivity, 1, 2).with_first(Role::Breaker);
        let mut s = BoardState::new(spec, g).unwrap();
        s.apply_claim(Role::Breaker, &[0, 1]).unwrap();
        assert!(s.is_over());
    }

    #[test]
    fn winners() {
        // MB connectivity on K_3: Maker owns 01 and 12.
        let g = Arc::new(Graph::complete(3));
        let mut s = BoardState::new(GameSpec::maker_breaker(Target::Connectivity, 1, 1), g.clone()).unwrap();
        let e01 = g.edge_id(0, 1).unwrap();
        let e12 = g.edge_id(1, 2).unwrap();
        let e02 = g.edge_id(0, 2).unwrap();
        s.apply_claim(Role::Maker, &[e01]).unwrap();
        s.apply_claim(Role::Breaker, &[e02]).unwrap();
        s.apply_claim(Role::Maker, &[e12]).unwrap();
        assert_eq!(s.outcome(), Some((Role::Maker, Reason::TargetAchieved)));

        // AE isolate on K_3, Avoider owns only 01 at exhaustion.
        let spec = GameSpec::avoider_enforcer(Target::IsolateVertex, 1, 2).with_cutoff(false);
        let mut s = BoardState::new(spec, g.clone()).unwrap();
        s.apply_claim(Role::AVOIDER, &[e01]).unwrap();
        s.apply_claim(Role::ENFORCER, &[e02, e12]).unwrap();
        assert_eq!(s.outcome(), Some((Role::AVOIDER, Reason::BoardExhausted)));
        assert!(!s.maker_has_target());
    }

    #[test]
    fn c4_hamiltonicity_breaker_takes_one_edge() {
        let g = Arc::new(Graph::cycle(4));
        let spec = GameSpec::maker_breaker(Target::Hamiltonicity, 1, 1);
        let mut s = BoardState::new(spec.clone(), g.clone()).unwrap();
        s.apply_claim(Role::Maker, &[0]).unwrap();
        s.apply_claim(Role::Breaker, &[1]).unwrap();
        assert_eq!(s.outcome(), Some((Role::Breaker, Reason::TargetUnavoidable)));
        let mut s = BoardState::new(spec.with_cutoff(false), g).unwrap();
        s.apply_claim(Role::Maker, &[0]).unwrap();
        s.apply_claim(Role::Breaker, &[1]).unwrap();
        s.apply_claim(Role::Maker, &[2]).unwrap();
        s.apply_claim(Role::Breaker, &[3]).unwrap();
        assert_eq!(s.outcome(), Some((Role::Breaker, Reason::BoardExhausted)));
    }

    #[test]
    fn isolated_vertex_decides_immediately() {
        let g = Arc::new(Graph::from_edges(4, [(0, 1), (1, 2), (0, 2)]).unwrap());
        let s = BoardState::new(GameSpec::maker_breaker(Target::Hamiltonicity, 1, 1), g).unwrap();
        assert_eq!(s.outcome(), Some((Role::Breaker, Reason::TargetUnavoidable)));
    }

    #[test]
    fn degrees_partition() {
        let g = Arc::new(Graph::complete(6));
        let mut s = BoardState::new(GameSpec::maker_breaker(Target::Hamiltonicity, 1, 3), g.clone()).unwrap();
        s.apply_claim(Role::Maker, &[0]).unwrap();
        s.apply_claim(Role::Breaker, &[1, 2, 3]).unwrap();
        for v in 0..6 {
            assert_eq!(s.d_maker(v) + s.d_breaker(v) + s.d_free(v), g.degree(v));
        }
        let replayed = BoardState::replay(s.spec().clone(), g, s.history()).unwrap();
        assert_eq!(replayed, s);
    }

    #[test]
    fn hypergraph_targets() {
        let g = Arc::new(Graph::abstract_board(4));
        let h = Arc::new(Hypergraph::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap());
        let mut s = BoardState::new(
            GameSpec::maker_breaker(Target::ExplicitHypergraph(h.clone()), 1, 1),
            g.clone(),
        )
        .unwrap();
        s.apply_claim(Role::Maker, &[0]).unwrap();
        s.apply_claim(Role::Breaker, &[2]).unwrap();
        assert!(!s.is_over());
        s.apply_claim(Role::Maker, &[1]).unwrap();
        assert_eq!(s.outcome(), Some((Role::Maker, Reason::TargetAchieved)));
        let mut s = BoardState::new(GameSpec::maker_breaker(Target::ExplicitHypergraph(h), 1, 1), g).unwrap();
        s.apply_claim(Role::Maker, &[0]).unwrap();
        s.apply_claim(Role::Breaker, &[1]).unwrap();
        s.apply_claim(Role::Maker, &[2]).unwrap();
        s.apply_claim(Role::Breaker, &[3]).unwrap();
        assert_eq!(s.outcome(), Some((Role::Breaker, Reason::BoardExhausted)));
    }
}
