//! Undirected simple graphs on dense vertex ids, G(n,p) sampling and the
//! set primitives N(U), e(U), e(U,W), e(v,U).

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng;

pub type Vertex = usize;
/// Index of an edge in [`Graph::edges`] (edges are kept in sorted order).
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("edge probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("vertex count must be at least 1")]
    EmptyVertexSet,
    #[error("vertex sets overlap at vertex {0}")]
    OverlappingSets(usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Unordered vertex pair stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    u: u32,
    v: u32,
}

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Result<Self, GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        Ok(Edge {
            u: u as u32,
            v: v as u32,
        })
    }

    #[inline]
    pub fn u(&self) -> Vertex {
        self.u as usize
    }

    #[inline]
    pub fn v(&self) -> Vertex {
        self.v as usize
    }

    #[inline]
    pub fn touches(&self, x: Vertex) -> bool {
        self.u() == x || self.v() == x
    }

    /// The endpoint that is not `x`. `x` must be an endpoint.
    #[inline]
    pub fn other(&self, x: Vertex) -> Vertex {
        if self.u() == x {
            self.v()
        } else {
            self.u()
        }
    }
}

impl std::fmt::Display for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Parameters of a G(n,p) sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GnpParams {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl GnpParams {
    pub fn new(n: usize, p: f64, seed: u64) -> Result<Self, GraphError> {
        let params = GnpParams { n, p, seed };
        params.validate()?;
        Ok(params)
    }

    /// `p = factor * ln n / n`, clamped to 1.
    pub fn ln_scaled(n: usize, factor: f64, seed: u64) -> Result<Self, GraphError> {
        let p = (factor * (n as f64).ln() / n as f64).min(1.0);
        Self::new(n, p, seed)
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        if self.n == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        if !(0.0..=1.0).contains(&self.p) || self.p.is_nan() {
            return Err(GraphError::InvalidProbability(self.p));
        }
        Ok(())
    }

    /// The scaling unit `np / ln n`; undefined below two vertices.
    pub fn f(&self) -> Option<f64> {
        scaling_unit(self.n, self.p)
    }
}

/// `np / ln n` for `n >= 2`.
pub fn scaling_unit(n: usize, p: f64) -> Option<f64> {
    (n >= 2).then(|| n as f64 * p / (n as f64).ln())
}

/// Samples G(n,p). Pair `(u,v)` with `u < v` has index `u*n + v` and is kept
/// iff `unit_f64(seed, index) < p`, so the result is a pure function of
/// `(n, p, seed)`.
pub fn sample_gnp(params: &GnpParams) -> Result<Graph, GraphError> {
    params.validate()?;
    let n = params.n;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let idx = (u * n + v) as u64;
            if rng::unit_f64(params.seed, idx) < params.p {
                edges.push(Edge {
                    u: u as u32,
                    v: v as u32,
                });
            }
        }
    }
    Ok(Graph::from_sorted_unique(n, edges))
}

/// Immutable undirected simple graph on vertices `0..n`.
///
/// Keeps sorted neighbor lists (with the id of each incident edge) and one
/// adjacency bit row per vertex for constant-time membership and fast set
/// operations.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<u32>>,
    adj_edge: Vec<Vec<u32>>,
    rows: Vec<FixedBitSet>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    /// Builds a graph from vertex pairs; rejects loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut edges = Vec::new();
        for (a, b) in pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            edges.push(Edge::new(a, b)?);
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].u(), w[0].v()));
        }
        Ok(Self::from_sorted_unique(n, edges))
    }

    pub(crate) fn from_sorted_unique(n: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut adj = vec![Vec::new(); n];
        let mut adj_edge = vec![Vec::new(); n];
        let mut rows = vec![FixedBitSet::with_capacity(n); n];
        for (id, e) in edges.iter().enumerate() {
            adj[e.u()].push(e.v);
            adj_edge[e.u()].push(id as u32);
            adj[e.v()].push(e.u);
            adj_edge[e.v()].push(id as u32);
            rows[e.u()].insert(e.v());
            rows[e.v()].insert(e.u());
        }
        for v in 0..n {
            let mut pairs: Vec<(u32, u32)> = adj[v]
                .iter()
                .copied()
                .zip(adj_edge[v].iter().copied())
                .collect();
            pairs.sort_unstable();
            adj[v] = pairs.iter().map(|p| p.0).collect();
            adj_edge[v] = pairs.iter().map(|p| p.1).collect();
        }
        Graph {
            n,
            edges,
            adj,
            adj_edge,
            rows,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push(Edge {
                    u: u as u32,
                    v: v as u32,
                });
            }
        }
        Self::from_sorted_unique(n, edges)
    }

    /// Path `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are valid")
    }

    /// Cycle `0-1-...-(n-1)-0`, `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are valid")
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star edges are valid")
    }

    /// Complete bipartite graph with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let pairs = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Self::from_edges(a + b, pairs).expect("bipartite edges are valid")
    }

    /// The Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10, spokes i-(i+5).
    pub fn petersen() -> Self {
        let mut pairs = Vec::new();
        for i in 0..5 {
            pairs.push((i, (i + 1) % 5));
            pairs.push((5 + i, 5 + (i + 2) % 5));
            pairs.push((i, i + 5));
        }
        Self::from_edges(10, pairs).expect("petersen edges are valid")
    }

    /// The first `m` edges of `K_k` in lexicographic order, on the smallest
    /// `k` that has at least `m` pairs. Used as an abstract board with `m`
    /// elements.
    pub fn abstract_board(m: usize) -> Self {
        let mut k = 2;
        while k * (k - 1) / 2 < m {
            k += 1;
        }
        let mut edges = Graph::complete(k).edges;
        edges.truncate(m);
        Self::from_sorted_unique(k, edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Sorted neighbors of `v`.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> impl ExactSizeIterator<Item = Vertex> + '_ {
        self.adj[v].iter().map(|&w| w as usize)
    }

    /// Ids of the edges at `v`, aligned with [`Graph::neighbors`].
    #[inline]
    pub fn incident_edges(&self, v: Vertex) -> impl ExactSizeIterator<Item = EdgeId> + '_ {
        self.adj_edge[v].iter().map(|&e| e as usize)
    }

    /// `(neighbor, edge id)` pairs at `v`.
    #[inline]
    pub fn incidences(&self, v: Vertex) -> impl ExactSizeIterator<Item = (Vertex, EdgeId)> + '_ {
        self.adj[v]
            .iter()
            .zip(self.adj_edge[v].iter())
            .map(|(&w, &e)| (w as usize, e as usize))
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.rows[u].contains(v)
    }

    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        if !self.has_edge(u, v) {
            return None;
        }
        let i = self.adj[u].binary_search(&(v as u32)).ok()?;
        Some(self.adj_edge[u][i] as usize)
    }

    /// Adjacency bit row of `v`.
    #[inline]
    pub fn row(&self, v: Vertex) -> &FixedBitSet {
        &self.rows[v]
    }

    /// Adjacency rows packed into `u64` masks, available for `n <= 64`.
    pub fn masks(&self) -> Option<Vec<u64>> {
        (self.n <= 64).then(|| {
            self.adj
                .iter()
                .map(|nb| nb.iter().fold(0u64, |m, &w| m | (1u64 << w)))
                .collect()
        })
    }

    fn check_set(&self, set: &[Vertex]) -> Result<FixedBitSet, GraphError> {
        let mut bits = FixedBitSet::with_capacity(self.n);
        for &x in set {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
            bits.insert(x);
        }
        Ok(bits)
    }

    /// External neighborhood `N(U) = {v not in U : v has a neighbor in U}`.
    pub fn external_neighborhood(&self, set: &[Vertex]) -> Result<Vec<Vertex>, GraphError> {
        let inside = self.check_set(set)?;
        let mut out = FixedBitSet::with_capacity(self.n);
        for u in inside.ones() {
            out.union_with(&self.rows[u]);
        }
        out.difference_with(&inside);
        Ok(out.ones().collect())
    }

    /// `e(U)`: edges with both endpoints in `U`.
    pub fn edges_within(&self, set: &[Vertex]) -> Result<usize, GraphError> {
        let inside = self.check_set(set)?;
        let twice: usize = inside
            .ones()
            .map(|u| self.rows[u].intersection_count(&inside))
            .sum();
        Ok(twice / 2)
    }

    /// `e(U,W)` for disjoint `U`, `W`.
    pub fn edges_between(&self, set_u: &[Vertex], set_w: &[Vertex]) -> Result<usize, GraphError> {
        let bu = self.check_set(set_u)?;
        let bw = self.check_set(set_w)?;
        if let Some(x) = bu.intersection(&bw).next() {
            return Err(GraphError::OverlappingSets(x));
        }
        Ok(bu.ones().map(|u| self.rows[u].intersection_count(&bw)).sum())
    }

    /// `e(v,U)`: edges from `v` into `U` (a loop is never counted).
    pub fn edges_from(&self, v: Vertex, set: &[Vertex]) -> Result<usize, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        let bits = self.check_set(set)?;
        Ok(self.rows[v].intersection_count(&bits))
    }

    /// Spanning subgraph keeping only the given edge ids.
    pub fn spanning_subgraph<I>(&self, ids: I) -> Graph
    where
        I: IntoIterator<Item = EdgeId>,
    {
        let mut edges: Vec<Edge> = ids.into_iter().map(|id| self.edges[id]).collect();
        edges.sort_unstable();
        edges.dedup();
        Graph::from_sorted_unique(self.n, edges)
    }

    /// This graph plus the non-edge `uv`.
    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<Graph, GraphError> {
        let e = Edge::new(u, v)?;
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        let mut edges = self.edges.clone();
        match edges.binary_search(&e) {
            Ok(_) => Err(GraphError::DuplicateEdge(e.u(), e.v())),
            Err(pos) => {
                edges.insert(pos, e);
                Ok(Graph::from_sorted_unique(self.n, edges))
            }
        }
    }

    /// All vertex pairs that are not edges, in lexicographic order.
    pub fn non_edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.rows[u].contains(v) {
                    out.push(Edge {
                        u: u as u32,
                        v: v as u32,
                    });
                }
            }
        }
        out
    }

    /// Line format: `n <count>` followed by one sorted `u v` pair per line.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(16 + self.edges.len() * 8);
        let _ = writeln!(s, "n {}", self.n);
        for e in &self.edges {
            let _ = writeln!(s, "{} {}", e.u, e.v);
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["n", count] => count.parse::<usize>().map_err(|e| GraphError::Parse {
                line,
                msg: e.to_string(),
            })?,
            _ => {
                return Err(GraphError::Parse {
                    line,
                    msg: format!("expected `n <count>`, got `{header}`"),
                })
            }
        };
        let mut pairs = Vec::new();
        for (line, l) in lines {
            let parts: Vec<_> = l.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(GraphError::Parse {
                    line,
                    msg: format!("expected `u v`, got `{l}`"),
                });
            }
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|e| GraphError::Parse {
                    line,
                    msg: e.to_string(),
                })
            };
            pairs.push((parse(parts[0])?, parse(parts[1])?));
        }
        Graph::from_edges(n, pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gnp_extremes() {
        let g = sample_gnp(&GnpParams::new(2, 1.0, 5).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 1);
        let g = sample_gnp(&GnpParams::new(5, 0.0, 5).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(
            GnpParams::new(5, 1.2, 0),
            Err(GraphError::InvalidProbability(1.2))
        );
        assert!(GnpParams::new(5, -0.1, 0).is_err());
    }

    #[test]
    fn gnp_mean_edge_count() {
        // Bin(4950, 1/2): mean 2475, sd sqrt(4950)/2, standard error over
        // 1000 seeds is sd / sqrt(1000).
        let seeds = 1000;
        let total: usize = (0..seeds)
            .map(|s| {
                sample_gnp(&GnpParams::new(100, 0.5, s).unwrap())
                    .unwrap()
                    .edge_count()
            })
            .sum();
        let mean = total as f64 / seeds as f64;
        let se = (4950.0f64).sqrt() / 2.0 / (seeds as f64).sqrt();
        assert!((mean - 2475.0).abs() < 3.0 * se, "mean {mean}");
    }

    #[test]
    fn neighborhood_examples() {
        let c4 = Graph::cycle(4);
        assert_eq!(c4.external_neighborhood(&[0]).unwrap(), vec![1, 3]);
        assert!(c4.external_neighborhood(&[0, 1, 2, 3]).unwrap().is_empty());
        let k5 = Graph::complete(5);
        assert_eq!(k5.external_neighborhood(&[0, 1]).unwrap(), vec![2, 3, 4]);
        assert!(matches!(
            k5.external_neighborhood(&[7]),
            Err(GraphError::VertexOutOfRange { vertex: 7, .. })
        ));
    }

    #[test]
    fn edge_count_examples() {
        let k4 = Graph::complete(4);
        assert_eq!(k4.edges_within(&[0, 1, 2]).unwrap(), 3);
        assert_eq!(k4.edges_between(&[0, 1], &[2, 3]).unwrap(), 4);
        assert_eq!(
            k4.edges_between(&[0, 1], &[1, 3]),
            Err(GraphError::OverlappingSets(1))
        );
        let p = Graph::path(3);
        assert_eq!(p.edges_from(1, &[0, 2]).unwrap(), 2);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn text_rejects_garbage() {
        assert!(Graph::from_text("").is_err());
        assert!(Graph::from_text("m 3\n").is_err());
        assert!(Graph::from_text("n 3\n0 1 2\n").is_err());
        assert!(Graph::from_text("n 3\n0 x\n").is_err());
        let g = Graph::from_text("n 3\n\n1 0\n").unwrap();
        assert_eq!(g.edges(), &[Edge::new(0, 1).unwrap()]);
    }

    #[test]
    fn petersen_shape() {
        let g = Graph::petersen();
        assert_eq!(g.edge_count(), 15);
        assert!((0..10).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn edge_ids_match_edges() {
        let g = sample_gnp(&GnpParams::new(30, 0.3, 11).unwrap()).unwrap();
        for (id, e) in g.edges().iter().enumerate() {
            assert_eq!(g.edge_id(e.u(), e.v()), Some(id));
            assert_eq!(g.edge_id(e.v(), e.u()), Some(id));
        }
        for v in 0..g.n() {
            for (w, id) in g.incidences(v) {
                assert_eq!(g.edge(id), Edge::new(v, w).unwrap());
            }
        }
    }

    fn arb_graph() -> impl Strategy<Value = (Graph, Vec<usize>)> {
        (1usize..24, 0.0f64..1.0, any::<u64>()).prop_flat_map(|(n, p, seed)| {
            let g = sample_gnp(&GnpParams::new(n, p, seed).unwrap()).unwrap();
            (Just(g), proptest::collection::vec(0..n, 0..n))
        })
    }

    proptest! {
        #[test]
        fn sampling_is_pure(n in 1usize..40, p in 0.0f64..=1.0, seed in any::<u64>()) {
            let a = sample_gnp(&GnpParams::new(n, p, seed).unwrap()).unwrap();
            let b = sample_gnp(&GnpParams::new(n, p, seed).unwrap()).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn edge_partition_and_handshake((g, set) in arb_graph()) {
            let mut inside = set.clone();
            inside.sort_unstable();
            inside.dedup();
            let outside: Vec<usize> = (0..g.n()).filter(|v| inside.binary_search(v).is_err()).collect();
            let total = g.edges_within(&inside).unwrap()
                + g.edges_between(&inside, &outside).unwrap()
                + g.edges_within(&outside).unwrap();
            prop_assert_eq!(total, g.edge_count());
            prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
            let nb = g.external_neighborhood(&inside).unwrap();
            prop_assert!(nb.len() <= g.n() - inside.len());
            prop_assert!(nb.iter().all(|v| inside.binary_search(v).is_err()));
        }

        #[test]
        fn complete_graph_neighborhood_is_complement(n in 1usize..30, k in 1usize..30) {
            let k = k.min(n);
            let g = Graph::complete(n);
            let set: Vec<usize> = (0..k).collect();
            prop_assert_eq!(g.external_neighborhood(&set).unwrap().len(), n - k);
        }

        #[test]
        fn text_round_trip((g, _) in arb_graph()) {
            let text = g.to_text();
            let back = Graph::from_text(&text).unwrap();
            prop_assert_eq!(back.to_text(), text);
            prop_assert_eq!(back, g);
        }

        #[test]
        fn adjacency_agrees_with_edges((g, _) in arb_graph()) {
            for u in 0..g.n() {
                for v in 0..g.n() {
                    let listed = g.neighbors(u).any(|w| w == v);
                    prop_assert_eq!(listed, g.has_edge(u, v));
                    prop_assert_eq!(g.has_edge(u, v), g.edges().binary_search(&match Edge::new(u, v) {
                        Ok(e) => e,
                        Err(_) => continue,
                    }).is_ok());
                }
            }
        }
    }
}
