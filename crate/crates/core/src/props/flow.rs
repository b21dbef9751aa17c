//! Dinic max-flow on integer capacities, plus the max-density certificate
//! built on it.

use std::collections::VecDeque;

use crate::graph::{Graph, Vertex};

pub(crate) struct Dinic {
    head: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<i64>,
    next: Vec<usize>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl Dinic {
    pub fn new(nodes: usize) -> Self {
        Dinic {
            head: vec![NIL; nodes],
            to: Vec::new(),
            cap: Vec::new(),
            next: Vec::new(),
            level: vec![0; nodes],
            iter: vec![0; nodes],
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize, c: i64) {
        for (x, y, cc) in [(a, b, c), (b, a, 0)] {
            self.to.push(y);
            self.cap.push(cc);
            self.next.push(self.head[x]);
            self.head[x] = self.to.len() - 1;
        }
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            let mut a = self.head[x];
            while a != NIL {
                let y = self.to[a];
                if self.cap[a] > 0 && self.level[y] < 0 {
                    self.level[y] = self.level[x] + 1;
                    q.push_back(y);
                }
                a = self.next[a];
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, x: usize, t: usize, f: i64) -> i64 {
        if x == t {
            return f;
        }
        while self.iter[x] != NIL {
            let a = self.iter[x];
            let y = self.to[a];
            if self.cap[a] > 0 && self.level[y] == self.level[x] + 1 {
                let d = self.dfs(y, t, f.min(self.cap[a]));
                if d > 0 {
                    self.cap[a] -= d;
                    self.cap[a ^ 1] += d;
                    return d;
                }
            }
            self.iter[x] = self.next[a];
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.iter.copy_from_slice(&self.head);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        flow
    }

    /// Nodes reachable from `s` in the residual graph (after `max_flow`).
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            let mut a = self.head[x];
            while a != NIL {
                let y = self.to[a];
                if self.cap[a] > 0 && !seen[y] {
                    seen[y] = true;
                    q.push_back(y);
                }
                a = self.next[a];
            }
        }
        seen
    }
}

/// Result of maximizing `e(U) - g|U|` over vertex sets.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityExcess {
    /// The rational slope actually used, `floor(g * SCALE) / SCALE <= g`.
    pub slope: f64,
    /// `max_U e(U) - slope * |U|` (0 for the empty set).
    pub excess: f64,
    /// A maximizing set (empty when the excess is 0).
    pub set: Vec<Vertex>,
}

const SCALE: i64 = 1 << 20;

/// Maximum-weight closure: edges weigh 1, vertices weigh `-g`. Solved as a
/// min cut with edge nodes `0..m`, vertex nodes `m..m+n`.
pub fn max_density_excess(g_graph: &Graph, g: f64) -> DensityExcess {
    let n = g_graph.n();
    let m = g_graph.edge_count();
    let slope_scaled = (g * SCALE as f64).floor().max(0.0) as i64;
    let (s, t) = (m + n, m + n + 1);
    let mut net = Dinic::new(m + n + 2);
    for (i, e) in g_graph.edges().iter().enumerate() {
        net.add_edge(s, i, SCALE);
        net.add_edge(i, m + e.u(), i64::MAX / 4);
        net.add_edge(i, m + e.v(), i64::MAX / 4);
    }
    for v in 0..n {
        net.add_edge(m + v, t, slope_scaled);
    }
    let cut = net.max_flow(s, t);
    let excess_scaled = m as i64 * SCALE - cut;
    let side = net.source_side(s);
    let set: Vec<Vertex> = (0..n).filter(|&v| side[m + v]).collect();
    DensityExcess {
        slope: slope_scaled as f64 / SCALE as f64,
        excess: excess_scaled as f64 / SCALE as f64,
        set,
    }
}
