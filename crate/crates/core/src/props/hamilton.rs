//! Hamilton cycles, longest paths and boosters.
//!
//! Exact procedures are bitmask dynamic programs (n ≤ [`EXACT_DP_LIMIT`]) or
//! pruned backtracking. For larger graphs [`hamiltonicity`] runs cheap
//! necessary conditions, then rotation-extension (Pósa) search, then a
//! budgeted backtracking search, and may answer [`HamCheck::Unknown`].

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Edge, Graph, Vertex};
use crate::props::connectivity::{is_biconnected, is_connected};
use crate::props::PropError;
use crate::rng::{stream, GameRng};

/// Largest n for the bitmask dynamic programs.
pub const EXACT_DP_LIMIT: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HamCheck {
    /// A Hamilton cycle, as a vertex order starting at 0.
    Hamiltonian(Vec<Vertex>),
    NotHamiltonian,
    /// Search budget ran out without a verdict.
    Unknown,
}

impl HamCheck {
    pub fn is_yes(&self) -> bool {
        matches!(self, HamCheck::Hamiltonian(_))
    }
}

/// Exact Hamiltonicity test. Graphs with fewer than 3 vertices are not
/// Hamiltonian.
pub fn is_hamiltonian(g: &Graph) -> bool {
    hamilton_cycle(g).is_some()
}

/// An exact Hamilton cycle search with no budget.
pub fn hamilton_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    match hamiltonicity(g, u64::MAX) {
        HamCheck::Hamiltonian(c) => Some(c),
        HamCheck::NotHamiltonian => None,
        HamCheck::Unknown => unreachable!("unbounded search always decides"),
    }
}

/// Hamiltonicity with a cap on backtracking nodes.
pub fn hamiltonicity(g: &Graph, budget: u64) -> HamCheck {
    let n = g.n();
    if n < 3 || g.min_degree() < 2 || !is_connected(g) || !is_biconnected(g) {
        return HamCheck::NotHamiltonian;
    }
    if unbalanced_bipartite(g) {
        return HamCheck::NotHamiltonian;
    }
    if n <= EXACT_DP_LIMIT {
        return match dp_cycle(g) {
            Some(c) => HamCheck::Hamiltonian(c),
            None => HamCheck::NotHamiltonian,
        };
    }
    let mut rng = stream(0x6a09_e667, n as u64);
    let posa_budget = (50 * n * n).min(budget.min(u64::MAX / 2) as usize + 20 * n);
    for _ in 0..4 {
        if let Some(c) = posa_cycle(g, posa_budget, &mut rng) {
            return HamCheck::Hamiltonian(canonical_cycle(c));
        }
    }
    let mut search = Backtrack::new(g, budget);
    match search.run() {
        Some(true) => HamCheck::Hamiltonian(canonical_cycle(search.path)),
        Some(false) => HamCheck::NotHamiltonian,
        None => HamCheck::Unknown,
    }
}

/// Connected bipartite graph with sides of different sizes.
fn unbalanced_bipartite(g: &Graph) -> bool {
    let n = g.n();
    let mut side = vec![u8::MAX; n];
    let mut stack = vec![0];
    side[0] = 0;
    let mut count = [1usize, 0];
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v) {
            if side[w] == u8::MAX {
                side[w] = 1 - side[v];
                count[side[w] as usize] += 1;
                stack.push(w);
            } else if side[w] == side[v] {
                return false;
            }
        }
    }
    count[0] != count[1]
}

/// Checks that `cycle` is a Hamilton cycle of `g`.
pub fn is_hamilton_cycle(g: &Graph, cycle: &[Vertex]) -> bool {
    let n = g.n();
    if n < 3 || cycle.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

fn canonical_cycle(mut c: Vec<Vertex>) -> Vec<Vertex> {
    if let Some(pos) = c.iter().position(|&v| v == 0) {
        c.rotate_left(pos);
    }
    c
}

fn small_masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).fold(0u32, |m, w| m | (1 << w)))
        .collect()
}

/// Held–Karp style search for a Hamilton cycle through vertex 0.
fn dp_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    let n = g.n();
    let nb = small_masks(g);
    // reach[mask]: endpoints v such that a path 0 -> v visits exactly `mask`
    // (mask always contains 0).
    let full = (1u32 << n) - 1;
    let mut reach = vec![0u32; 1 << n];
    reach[1] = 1;
    for mask in (1..=full).step_by(2) {
        let r = reach[mask as usize];
        if r == 0 {
            continue;
        }
        let mut ends = r;
        while ends != 0 {
            let v = ends.trailing_zeros();
            ends &= ends - 1;
            let mut ext = nb[v as usize] & !mask;
            while ext != 0 {
                let w = ext.trailing_zeros();
                ext &= ext - 1;
                reach[(mask | (1 << w)) as usize] |= 1 << w;
            }
        }
    }
    let last = reach[full as usize] & nb[0];
    if last == 0 {
        return None;
    }
    // Walk back.
    let mut v = last.trailing_zeros() as usize;
    let mut mask = full;
    let mut rev = vec![v];
    while mask != 1 {
        let prev_mask = mask & !(1 << v);
        let cand = reach[prev_mask as usize] & nb[v];
        let u = cand.trailing_zeros() as usize;
        rev.push(u);
        mask = prev_mask;
        v = u;
    }
    rev.reverse();
    Some(rev)
}

/// Rotation-extension search. Returns a Hamilton cycle if one is found
/// within `budget` steps.
fn posa_cycle(g: &Graph, budget: usize, rng: &mut GameRng) -> Option<Vec<Vertex>> {
    let mut path = Vec::new();
    posa_extend(g, &mut path, budget, rng).then_some(path)
}

/// Rotation-extension search continuing from `path`, which must be a path of
/// `g` (an empty path starts at a random vertex). Extensions only lengthen
/// the path, so it can be kept and reused while `g` gains edges. Returns
/// `true` when `path` has become a Hamilton cycle order.
pub fn posa_extend(g: &Graph, path: &mut Vec<Vertex>, budget: usize, rng: &mut GameRng) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    let mut pos = vec![usize::MAX; n];
    if path.is_empty() {
        path.push(rng.gen_range(0..n));
    }
    for (i, &v) in path.iter().enumerate() {
        pos[v] = i;
    }
    let mut scratch: Vec<Vertex> = Vec::new();
    for _ in 0..budget {
        let end = *path.last().expect("nonempty");
        scratch.clear();
        scratch.extend(g.neighbors(end).filter(|&w| pos[w] == usize::MAX));
        if let Some(&w) = scratch.choose(rng) {
            pos[w] = path.len();
            path.push(w);
            continue;
        }
        if path.len() == n && g.has_edge(end, path[0]) {
            return true;
        }
        // Rotate: pick a path neighbor u = path[i] of end (not its predecessor),
        // reverse path[i+1..]. Prefer rotations producing an extendable end.
        let len = path.len();
        scratch.clear();
        scratch.extend(g.neighbors(end).filter(|&w| pos[w] + 2 < len));
        if scratch.is_empty() {
            path.reverse();
            for (i, &v) in path.iter().enumerate() {
                pos[v] = i;
            }
            continue;
        }
        let good = scratch.iter().copied().find(|&u| {
            let cand = path[pos[u] + 1];
            if len == n {
                g.has_edge(cand, path[0])
            } else {
                g.neighbors(cand).any(|w| pos[w] == usize::MAX)
            }
        });
        let u = match good {
            Some(u) => u,
            None => {
                if rng.gen_bool(0.1) {
                    path.reverse();
                    for (i, &v) in path.iter().enumerate() {
                        pos[v] = i;
                    }
                    continue;
                }
                *scratch.choose(rng).expect("nonempty")
            }
        };
        let i = pos[u];
        path[i + 1..].reverse();
        for (j, &v) in path.iter().enumerate().skip(i + 1) {
            pos[v] = j;
        }
    }
    path.len() == n && g.has_edge(path[n - 1], path[0])
}

/// Depth-first search for a Hamilton cycle through vertex 0 with degree
/// pruning and fewest-options-first ordering.
struct Backtrack<'a> {
    g: &'a Graph,
    budget: u64,
    nodes: u64,
    on_path: Vec<bool>,
    /// Number of neighbors of v that are off the path or are the path's
    /// start (0); for off-path v this bounds the ways v can be entered/left.
    avail: Vec<usize>,
    path: Vec<Vertex>,
}

impl<'a> Backtrack<'a> {
    fn new(g: &'a Graph, budget: u64) -> Self {
        let n = g.n();
        Backtrack {
            g,
            budget,
            nodes: 0,
            on_path: vec![false; n],
            avail: g.degrees(),
            path: Vec::with_capacity(n),
        }
    }

    fn run(&mut self) -> Option<bool> {
        self.push(0);
        let r = self.dfs();
        if r != Some(true) {
            self.path.clear();
        }
        r
    }

    fn push(&mut self, v: Vertex) {
        self.on_path[v] = true;
        self.path.push(v);
        if v != 0 {
            for w in self.g.neighbors(v) {
                self.avail[w] -= 1;
            }
        }
    }

    fn pop(&mut self) {
        let v = self.path.pop().expect("nonempty");
        self.on_path[v] = false;
        if v != 0 {
            for w in self.g.neighbors(v) {
                self.avail[w] += 1;
            }
        }
    }

    /// `Some(true)` found, `Some(false)` exhausted, `None` out of budget.
    fn dfs(&mut self) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let n = self.g.n();
        let end = *self.path.last().expect("nonempty");
        if self.path.len() == n {
            return Some(self.g.has_edge(end, 0));
        }
        // An off-path vertex needs two usable neighbors, counting the current
        // end (still usable as its entry).
        for v in 0..n {
            if !self.on_path[v] {
                let a = self.avail[v] + usize::from(self.g.has_edge(v, end) && end != 0);
                if a < 2 {
                    return Some(false);
                }
            }
        }
        let mut cands: Vec<Vertex> = self
            .g
            .neighbors(end)
            .filter(|&w| !self.on_path[w])
            .collect();
        cands.sort_by_key(|&w| (self.avail[w], w));
        for w in cands {
            self.push(w);
            match self.dfs() {
                Some(true) => return Some(true),
                Some(false) => {}
                None => {
                    self.pop();
                    return None;
                }
            }
            self.pop();
        }
        Some(false)
    }
}

/// `ends[mask]`: vertices v in `mask` such that some path with vertex set
/// exactly `mask` ends at v.
fn path_ends(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let nb = small_masks(g);
    let mut ends = vec![0u32; 1 << n];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    for mask in 1u32..(1 << n) {
        if mask.count_ones() < 2 {
            continue;
        }
        let mut acc = 0u32;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            if ends[(mask & !(1 << v)) as usize] & nb[v as usize] != 0 {
                acc |= 1 << v;
            }
        }
        ends[mask as usize] = acc;
    }
    ends
}

fn check_dp_size(g: &Graph) -> Result<(), PropError> {
    if g.n() > EXACT_DP_LIMIT {
        Err(PropError::TooLarge {
            what: "exact path search",
            size: g.n(),
            limit: EXACT_DP_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// ℓ(G): the number of edges of a longest path. Exact, n ≤ [`EXACT_DP_LIMIT`].
pub fn longest_path_length(g: &Graph) -> Result<usize, PropError> {
    check_dp_size(g)?;
    if g.n() == 0 {
        return Ok(0);
    }
    let ends = path_ends(g);
    Ok(ends
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(m, _)| m.count_ones() as usize - 1)
        .max()
        .unwrap_or(0))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoosterReport {
    pub longest_path_len: usize,
    pub is_hamiltonian: bool,
    /// Sorted non-edges.
    pub boosters: Vec<Edge>,
}

/// All non-edges `uv` such that `g + uv` is Hamiltonian or has a longer
/// longest path. For Hamiltonian `g` every non-edge qualifies.
pub fn booster_set(g: &Graph) -> Result<BoosterReport, PropError> {
    check_dp_size(g)?;
    let n = g.n();
    let non_edges = g.non_edges();
    if n == 0 {
        return Ok(BoosterReport {
            longest_path_len: 0,
            is_hamiltonian: false,
            boosters: vec![],
        });
    }
    let ends = path_ends(g);
    let ell = ends
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(m, _)| m.count_ones() as usize - 1)
        .max()
        .unwrap_or(0);
    let ham = is_hamiltonian(g);
    if ham {
        return Ok(BoosterReport {
            longest_path_len: ell,
            is_hamiltonian: true,
            boosters: non_edges,
        });
    }
    let boosters = if ell == n - 1 {
        // ℓ cannot grow; uv boosts iff g has a Hamilton u–v path (n ≥ 3).
        let ham_pairs = hamilton_path_pairs(g);
        non_edges
            .into_iter()
            .filter(|e| n >= 3 && ham_pairs[e.u()] & (1 << e.v()) != 0)
            .collect()
    } else {
        // uv boosts iff disjoint paths ending at u and at v cover ℓ+2 vertices.
        let full = (1u32 << n) - 1;
        let best: Vec<Vec<u8>> = (0..n)
            .map(|u| {
                let mut b: Vec<u8> = ends
                    .iter()
                    .enumerate()
                    .map(|(m, &e)| if e & (1 << u) != 0 { m.count_ones() as u8 } else { 0 })
                    .collect();
                for bit in 0..n {
                    for m in 0..(1usize << n) {
                        if m & (1 << bit) != 0 {
                            let sub = b[m ^ (1 << bit)];
                            if sub > b[m] {
                                b[m] = sub;
                            }
                        }
                    }
                }
                b
            })
            .collect();
        let need = ell + 2;
        non_edges
            .into_iter()
            .filter(|e| {
                let (u, v) = (e.u(), e.v());
                ends.iter().enumerate().any(|(m, &en)| {
                    en & (1 << u) != 0
                        && m & (1 << v) == 0
                        && m.count_ones() as usize + best[v][(full as usize) & !m] as usize >= need
                })
            })
            .collect()
    };
    Ok(BoosterReport {
        longest_path_len: ell,
        is_hamiltonian: false,
        boosters,
    })
}

/// `pairs[u]` has bit v set iff g has a Hamilton path from u to v.
fn hamilton_path_pairs(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let nb = small_masks(g);
    let full = (1usize << n) - 1;
    let mut reach = vec![0u32; 1 << n];
    (0..n)
        .map(|s| {
            reach.iter_mut().for_each(|r| *r = 0);
            reach[1 << s] = 1 << s;
            for mask in 1..=full {
                let r = reach[mask];
                if r == 0 {
                    continue;
                }
                let mut e = r;
                while e != 0 {
                    let v = e.trailing_zeros();
                    e &= e - 1;
                    let mut ext = nb[v as usize] & !(mask as u32);
                    while ext != 0 {
                        let w = ext.trailing_zeros();
                        ext &= ext - 1;
                        reach[mask | (1 << w)] |= 1 << w;
                    }
                }
            }
            reach[full] & !(1 << s)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{sample_gnp, GnpParams};
    use proptest::prelude::*;

    // Brute force: all permutations starting with 0.
    fn brute_hamiltonian(g: &Graph) -> bool {
        fn rec(g: &Graph, path: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let n = g.n();
            if path.len() == n {
                return g.has_edge(path[n - 1], path[0]);
            }
            for w in 0..n {
                if !used[w] && g.has_edge(*path.last().unwrap(), w) {
                    used[w] = true;
                    path.push(w);
                    if rec(g, path, used) {
                        return true;
                    }
                    path.pop();
                    used[w] = false;
                }
            }
            false
        }
        let n = g.n();
        if n < 3 {
            return false;
        }
        let mut used = vec![false; n];
        used[0] = true;
        rec(g, &mut vec![0], &mut used)
    }

    fn brute_longest(g: &Graph) -> usize {
        fn rec(g: &Graph, v: usize, used: &mut Vec<bool>, len: usize, best: &mut usize) {
            *best = (*best).max(len);
            for w in g.neighbors(v).collect::<Vec<_>>() {
                if !used[w] {
                    used[w] = true;
                    rec(g, w, used, len + 1, best);
                    used[w] = false;
                }
            }
        }
        let mut best = 0;
        for s in 0..g.n() {
            let mut used = vec![false; g.n()];
            used[s] = true;
            rec(g, s, &mut used, 0, &mut best);
        }
        best
    }

    #[test]
    fn small_examples() {
        assert!(is_hamiltonian(&Graph::cycle(5)));
        assert!(!is_hamiltonian(&Graph::path(4)));
        assert!(!is_hamiltonian(&Graph::petersen()));
        assert!(is_hamiltonian(&Graph::complete(3)));
        assert!(!is_hamiltonian(&Graph::complete(2)));
        assert!(!is_hamiltonian(&Graph::complete_bipartite(2, 3)));
        assert!(is_hamiltonian(&Graph::complete_bipartite(3, 3)));
        assert_eq!(longest_path_length(&Graph::empty(1)).unwrap(), 0);
        assert_eq!(longest_path_length(&Graph::path(4)).unwrap(), 3);
        assert_eq!(longest_path_length(&Graph::cycle(5)).unwrap(), 4);
        assert_eq!(longest_path_length(&Graph::petersen()).unwrap(), 9);
    }

    #[test]
    fn path_boosters() {
        let r = booster_set(&Graph::path(4)).unwrap();
        assert_eq!(r.longest_path_len, 3);
        assert!(!r.is_hamiltonian);
        assert!(r.boosters.contains(&Edge::new(0, 3).unwrap()));
        assert!(!r.boosters.contains(&Edge::new(0, 2).unwrap()));
        assert!(!r.boosters.contains(&Edge::new(1, 3).unwrap()));
        assert_eq!(r.boosters, vec![Edge::new(0, 3).unwrap()]);
    }

    #[test]
    fn hamiltonian_input_lists_all_non_edges() {
        let r = booster_set(&Graph::cycle(6)).unwrap();
        assert!(r.is_hamiltonian);
        assert_eq!(r.boosters, Graph::cycle(6).non_edges());
    }

    #[test]
    fn large_graphs_use_heuristics() {
        let g = Graph::cycle(60);
        assert!(hamiltonicity(&g, 10_000).is_yes());
        let g = sample_gnp(&GnpParams::new(80, 0.2, 3).unwrap()).unwrap();
        match hamiltonicity(&g, 100_000) {
            HamCheck::Hamiltonian(c) => assert!(is_hamilton_cycle(&g, &c)),
            other => panic!("{other:?}"),
        }
        assert_eq!(hamiltonicity(&Graph::path(40), 10), HamCheck::NotHamiltonian);
        // Two cliques sharing a vertex: cut vertex.
        let mut pairs = vec![];
        for a in 0..15 {
            for b in a + 1..15 {
                pairs.push((a, b));
                pairs.push((a + 14, b + 14));
            }
        }
        pairs.sort();
        pairs.dedup();
        let g = Graph::from_edges(29, pairs).unwrap();
        assert_eq!(hamiltonicity(&g, 10), HamCheck::NotHamiltonian);
    }

    #[test]
    fn backtracking_decides_non_hamiltonian_mid_size() {
        // K_{12,13} is 2-connected with min degree 12 but unbalanced.
        let g = Graph::complete_bipartite(12, 13);
        assert_eq!(hamiltonicity(&g, u64::MAX), HamCheck::NotHamiltonian);
    }

    proptest! {
        #[test]
        fn dp_matches_brute_force(n in 1usize..9, p in 0.2f64..0.9, seed in any::<u64>()) {
            let g = sample_gnp(&GnpParams::new(n, p, seed).unwrap()).unwrap();
            let ham = is_hamiltonian(&g);
            prop_assert_eq!(ham, brute_hamiltonian(&g));
            if let Some(c) = hamilton_cycle(&g) {
                prop_assert!(is_hamilton_cycle(&g, &c));
            }
            prop_assert_eq!(longest_path_length(&g).unwrap(), brute_longest(&g));
        }

        #[test]
        fn backtracking_matches_dp(n in 3usize..12, p in 0.25f64..0.8, seed in any::<u64>()) {
            let g = sample_gnp(&GnpParams::new(n, p, seed).unwrap()).unwrap();
            let mut bt = Backtrack::new(&g, u64::MAX);
            let found = bt.run() == Some(true);
            prop_assert_eq!(found, dp_cycle(&g).is_some());
            if found {
                prop_assert!(is_hamilton_cycle(&g, &bt.path));
            }
        }

        #[test]
        fn boosters_match_definition(n in 2usize..9, p in 0.2f64..0.8, seed in any::<u64>()) {
            let g = sample_gnp(&GnpParams::new(n, p, seed).unwrap()).unwrap();
            let r = booster_set(&g).unwrap();
            let ell = brute_longest(&g);
            prop_assert_eq!(r.longest_path_len, ell);
            for e in g.non_edges() {
                let h = g.with_edge(e.u(), e.v()).unwrap();
                let boost = brute_hamiltonian(&g)
                    || brute_hamiltonian(&h)
                    || brute_longest(&h) > ell;
                prop_assert_eq!(r.boosters.contains(&e), boost, "edge {}", e);
            }
        }
    }
}
