//! Enforcer's expansion forcer: Enforcer refuses to own all of any edge set
//! `E(S,F)` or `E(A,B)`, which leaves Avoider an edge into each of them.

use serde_json::json;

use crate::game::{params, BoardState, Cursor, Forfeit, Params, Role, Strategy};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::hypergraph::{AvoiderPotential, Hypergraph, PotentialTracker};
use crate::rng::GameRng;

/// Largest family the forcer will build.
pub const MAX_FAMILY_SETS: usize = 500_000;

/// Target sets `E(S,F)` for `|S| ≤ k1`, `F ∈ F(S)`, and `E(A,B)` for
/// disjoint `|A| = |B| = k2`, as edge-id sets of the board.
#[derive(Debug, Clone)]
pub struct ForcerFamily {
    pub d: usize,
    pub k1: usize,
    pub k2: usize,
    pub family: Hypergraph,
    pub star_sets: usize,
    pub pair_sets: usize,
    /// Sets with no board edge; Avoider can never hit them, so they are left out.
    pub skipped_empty: usize,
}

fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Upper bound on the number of sets before empty ones are dropped.
pub fn family_size_bound(n: usize, d: usize, k1: usize, k2: usize) -> f64 {
    let stars: f64 = (1..=k1).map(|k| binom(n, k) * binom(2 * d * k, d * k)).sum();
    let pairs = if k2 == 0 { 0.0 } else { binom(n, k2) * binom(n.saturating_sub(k2), k2) / 2.0 };
    stars + pairs
}

/// Splits `nb` (in index order) into `parts` blocks of `⌊|nb|/parts⌋`
/// vertices; the last block takes the remainder.
pub fn partition_blocks(nb: &[Vertex], parts: usize) -> Vec<Vec<Vertex>> {
    let size = nb.len() / parts.max(1);
    (0..parts)
        .map(|i| {
            let lo = i * size;
            let hi = if i + 1 == parts { nb.len() } else { lo + size };
            nb[lo.min(nb.len())..hi.min(nb.len())].to_vec()
        })
        .collect()
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), f);
}

fn edges_between(g: &Graph, a: &[Vertex], b: &[Vertex]) -> Vec<EdgeId> {
    let mut out: Vec<EdgeId> = a
        .iter()
        .flat_map(|&x| b.iter().filter_map(move |&y| g.edge_id(x, y)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

impl ForcerFamily {
    pub fn build(g: &Graph, d: usize, k1: usize, k2: usize) -> Result<Self, String> {
        let n = g.n();
        if d == 0 {
            return Err("forcer needs d >= 1".into());
        }
        let bound = family_size_bound(n, d, k1, k2);
        if bound > MAX_FAMILY_SETS as f64 {
            return Err(format!(
                "forcer family would have up to {bound:.3e} sets (n={n}, d={d}, k1={k1}, k2={k2}); limit is {MAX_FAMILY_SETS}"
            ));
        }
        let mut sets: Vec<Vec<EdgeId>> = Vec::new();
        let mut skipped = 0;
        let mut push = |s: Vec<EdgeId>, sets: &mut Vec<Vec<EdgeId>>| {
            if s.is_empty() {
                skipped += 1;
            } else {
                sets.push(s);
            }
        };
        for k in 1..=k1.min(n) {
            for_each_subset(n, k, &mut |s: &[usize]| {
                let nb = g.external_neighborhood(s).expect("valid set");
                let blocks = partition_blocks(&nb, 2 * d * k);
                for_each_subset(blocks.len(), d * k, &mut |pick: &[usize]| {
                    let f: Vec<Vertex> = pick.iter().flat_map(|&i| blocks[i].iter().copied()).collect();
                    push(edges_between(g, s, &f), &mut sets);
                });
            });
        }
        let star_sets = sets.len();
        if k2 >= 1 && 2 * k2 <= n {
            for_each_subset(n, k2, &mut |a: &[usize]| {
                let rest: Vec<Vertex> = (0..n).filter(|v| !a.contains(v)).collect();
                for_each_subset(rest.len(), k2, &mut |bi: &[usize]| {
                    let b: Vec<Vertex> = bi.iter().map(|&i| rest[i]).collect();
                    // Each unordered pair once: A holds the smaller minimum.
                    if a[0] < b[0] {
                        push(edges_between(g, a, &b), &mut sets);
                    }
                });
            });
        }
        let pair_sets = sets.len() - star_sets;
        let family = Hypergraph::new(g.edge_count(), sets).map_err(|e| e.to_string())?;
        Ok(ForcerFamily {
            d,
            k1,
            k2,
            family,
            star_sets,
            pair_sets,
            skipped_empty: skipped,
        })
    }
}

/// Enforcer plays Avoider's potential strategy (with `a := b`) on the forcer
/// family, claiming exactly `b` edges per move.
pub struct EnforcerForcer {
    d: usize,
    k1: usize,
    k2: usize,
    b: usize,
    family: Option<ForcerFamily>,
    tracker: Option<PotentialTracker>,
    cursor: Cursor,
}

pub fn enforcer_forcer(d: usize, k1: usize, k2: usize, b: usize) -> EnforcerForcer {
    EnforcerForcer {
        d,
        k1,
        k2,
        b,
        family: None,
        tracker: None,
        cursor: Cursor::default(),
    }
}

impl EnforcerForcer {
    pub fn family(&self) -> Option<&ForcerFamily> {
        self.family.as_ref()
    }

    fn sync(&mut self, state: &BoardState) -> Result<(), Forfeit> {
        let (fresh, restarted) = self.cursor.fresh(state);
        if self.family.is_none() {
            let f = ForcerFamily::build(state.board(), self.d, self.k1, self.k2).map_err(Forfeit)?;
            self.family = Some(f);
        }
        let moves = if restarted || self.tracker.is_none() {
            let f = self.family.as_ref().expect("built");
            self.tracker = Some(PotentialTracker::new(f.family.clone(), 1.0 + 1.0 / self.b.max(1) as f64));
            state.history()
        } else {
            fresh
        };
        let t = self.tracker.as_mut().expect("tracker");
        for mv in moves {
            for &x in &mv.edges {
                if mv.role == Role::ENFORCER {
                    t.claim(x);
                } else {
                    t.kill(x);
                }
            }
        }
        Ok(())
    }
}

impl Strategy for EnforcerForcer {
    fn name(&self) -> &str {
        "enforcer-forcer"
    }

    fn params(&self) -> Params {
        params([
            ("d", json!(self.d)),
            ("k1", json!(self.k1)),
            ("k2", json!(self.k2)),
            ("b", json!(self.b)),
        ])
    }

    fn choose(&mut self, state: &BoardState, _rng: &mut GameRng) -> Result<Vec<EdgeId>, Forfeit> {
        self.sync(state)?;
        let (k, _) = state.claim_bounds(state.to_move());
        let t = self.tracker.as_ref().expect("synced");
        Ok(AvoiderPotential::pick(t, state, k))
    }
}
